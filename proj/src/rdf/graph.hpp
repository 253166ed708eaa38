#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rdf/term.hpp"

namespace olmap::rdf {

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    // Throws std::invalid_argument when the subject is a literal or the
    // predicate is not an IRI.
    Triple(Term subject, Term predicate, Term object);

    bool operator==(const Triple& other) const;
    bool operator<(const Triple& other) const;  // (s, p, o) lexicographic
};

// In-memory triple store with set semantics and three permutation indexes.
// Immutable after construction as used by the engine; reads are thread-safe
// once building is done.
class Graph {
public:
    // Returns true when the triple was new. Duplicates leave the graph
    // unchanged.
    bool insert(Triple triple);

    std::size_t size() const { return size_; }
    bool contains(const Triple& triple) const;

    // All triples matching the pattern (nullopt = wildcard), in (s, p, o)
    // lexicographic order over the terms' N-Triples forms.
    std::vector<Triple> match(const std::optional<Term>& subject,
                              const std::optional<Term>& predicate,
                              const std::optional<Term>& object) const;

    // All triples in (s, p, o) order.
    std::vector<Triple> triples() const;

    // Distinct terms appearing anywhere in the graph, sorted.
    std::vector<Term> terms() const;

    bool operator==(const Graph& other) const;

private:
    using TermSet = std::set<Term>;
    using NestedIndex = std::map<Term, std::map<Term, TermSet>>;

    NestedIndex spo_;
    NestedIndex pos_;
    NestedIndex osp_;
    std::size_t size_ = 0;
};

}  // namespace olmap::rdf
