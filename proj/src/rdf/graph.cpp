#include "rdf/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace olmap::rdf {

Triple::Triple(Term subjectTerm, Term predicateTerm, Term objectTerm)
    : subject(std::move(subjectTerm)),
      predicate(std::move(predicateTerm)),
      object(std::move(objectTerm)) {
    if (subject.isLiteral()) {
        throw std::invalid_argument("triple subject must not be a literal: " +
                                    subject.toNTriples());
    }
    if (!predicate.isIri()) {
        throw std::invalid_argument("triple predicate must be an IRI: " + predicate.toNTriples());
    }
}

bool Triple::operator==(const Triple& other) const {
    return subject == other.subject && predicate == other.predicate && object == other.object;
}

bool Triple::operator<(const Triple& other) const {
    return std::tie(subject, predicate, object) <
           std::tie(other.subject, other.predicate, other.object);
}

bool Graph::insert(Triple triple) {
    auto& objects = spo_[triple.subject][triple.predicate];
    if (!objects.insert(triple.object).second) return false;
    pos_[triple.predicate][triple.object].insert(triple.subject);
    osp_[triple.object][triple.subject].insert(triple.predicate);
    ++size_;
    return true;
}

bool Graph::contains(const Triple& triple) const {
    const auto si = spo_.find(triple.subject);
    if (si == spo_.end()) return false;
    const auto pi = si->second.find(triple.predicate);
    if (pi == si->second.end()) return false;
    return pi->second.count(triple.object) > 0;
}

std::vector<Triple> Graph::match(const std::optional<Term>& subject,
                                 const std::optional<Term>& predicate,
                                 const std::optional<Term>& object) const {
    std::vector<Triple> out;
    if (subject) {
        const auto si = spo_.find(*subject);
        if (si == spo_.end()) return out;
        if (predicate) {
            const auto pi = si->second.find(*predicate);
            if (pi == si->second.end()) return out;
            for (const Term& o : pi->second) {
                if (!object || o == *object) out.emplace_back(*subject, *predicate, o);
            }
        } else {
            for (const auto& [p, objects] : si->second) {
                for (const Term& o : objects) {
                    if (!object || o == *object) out.emplace_back(*subject, p, o);
                }
            }
        }
        return out;  // already in (s, p, o) order
    }
    if (predicate) {
        const auto pi = pos_.find(*predicate);
        if (pi == pos_.end()) return out;
        if (object) {
            const auto oi = pi->second.find(*object);
            if (oi == pi->second.end()) return out;
            for (const Term& s : oi->second) out.emplace_back(s, *predicate, *object);
            return out;  // subjects sorted, p and o fixed
        }
        for (const auto& [o, subjects] : pi->second) {
            for (const Term& s : subjects) out.emplace_back(s, *predicate, o);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    if (object) {
        const auto oi = osp_.find(*object);
        if (oi == osp_.end()) return out;
        for (const auto& [s, predicates] : oi->second) {
            for (const Term& p : predicates) out.emplace_back(s, p, *object);
        }
        return out;  // (s, p) sorted, o fixed
    }
    return triples();
}

std::vector<Triple> Graph::triples() const {
    std::vector<Triple> out;
    out.reserve(size_);
    for (const auto& [s, byPredicate] : spo_) {
        for (const auto& [p, objects] : byPredicate) {
            for (const Term& o : objects) out.emplace_back(s, p, o);
        }
    }
    return out;
}

std::vector<Term> Graph::terms() const {
    std::set<Term> unique;
    for (const auto& [s, byPredicate] : spo_) {
        unique.insert(s);
        for (const auto& [p, objects] : byPredicate) {
            unique.insert(p);
            unique.insert(objects.begin(), objects.end());
        }
    }
    return {unique.begin(), unique.end()};
}

bool Graph::operator==(const Graph& other) const {
    return size_ == other.size_ && spo_ == other.spo_;
}

}  // namespace olmap::rdf
