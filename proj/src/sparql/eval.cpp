#include "sparql/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace olmap::sparql {

namespace {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

enum class Truth { True, False, Error };

// Resolves a pattern position against a row: a constant stays itself, a
// bound variable becomes its term, an unbound variable stays a wildcard.
std::optional<Term> resolve(const PatternTerm& pt, const SolutionRow& row) {
    if (const auto* term = std::get_if<Term>(&pt)) return *term;
    const Term* bound = row.find(std::get<Variable>(pt).name);
    if (bound) return *bound;
    return std::nullopt;
}

// Binds `actual` to the pattern position, or checks consistency when the
// position is constant or already bound (covers repeated variables).
bool bindPosition(SolutionRow& row, const PatternTerm& pt, const Term& actual) {
    if (const auto* term = std::get_if<Term>(&pt)) return *term == actual;
    const std::string& name = std::get<Variable>(pt).name;
    const auto [it, inserted] = row.bindings.emplace(name, actual);
    return inserted || it->second == actual;
}

std::vector<SolutionRow> joinPattern(const std::vector<SolutionRow>& rows,
                                     const TriplePattern& tp, const Graph& g) {
    std::vector<SolutionRow> out;
    for (const SolutionRow& row : rows) {
        const auto s = resolve(tp.subject, row);
        const auto p = resolve(tp.predicate, row);
        const auto o = resolve(tp.object, row);
        for (const Triple& t : g.match(s, p, o)) {
            SolutionRow extended = row;
            if (bindPosition(extended, tp.subject, t.subject) &&
                bindPosition(extended, tp.predicate, t.predicate) &&
                bindPosition(extended, tp.object, t.object)) {
                out.push_back(std::move(extended));
            }
        }
    }
    return out;
}

void addVariables(const TriplePattern& tp, std::set<std::string>& vars) {
    for (const PatternTerm* pt : {&tp.subject, &tp.predicate, &tp.object}) {
        if (const auto* v = std::get_if<Variable>(pt)) vars.insert(v->name);
    }
}

std::size_t boundPositions(const TriplePattern& tp, const std::set<std::string>& vars) {
    std::size_t n = 0;
    for (const PatternTerm* pt : {&tp.subject, &tp.predicate, &tp.object}) {
        const auto* v = std::get_if<Variable>(pt);
        if (!v || vars.count(v->name)) ++n;
    }
    return n;
}

// Greedy join order: repeatedly take the pattern with the most constant or
// already-bound positions. Any order is correct; this one keeps the
// index-nested-loop join from exploding on the common shapes.
std::vector<const TriplePattern*> orderPatterns(const std::vector<TriplePattern>& patterns,
                                                std::set<std::string> boundVars) {
    std::vector<const TriplePattern*> pending;
    for (const TriplePattern& tp : patterns) pending.push_back(&tp);
    std::vector<const TriplePattern*> ordered;
    while (!pending.empty()) {
        auto best = pending.begin();
        std::size_t bestScore = boundPositions(**best, boundVars);
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            const std::size_t score = boundPositions(**it, boundVars);
            if (score > bestScore) {
                best = it;
                bestScore = score;
            }
        }
        ordered.push_back(*best);
        addVariables(**best, boundVars);
        pending.erase(best);
    }
    return ordered;
}

std::optional<long double> numericValue(const Term& term) {
    if (!term.hasNumericDatatype()) return std::nullopt;
    const std::string& lex = term.value();
    char* end = nullptr;
    const long double value = std::strtold(lex.c_str(), &end);
    if (end != lex.c_str() + lex.size() || lex.empty()) return std::nullopt;
    return value;
}

Truth truthOf(bool b) { return b ? Truth::True : Truth::False; }

Truth compareTerms(FilterExpr::CompareOp op, const Term& a, const Term& b) {
    const auto na = numericValue(a);
    const auto nb = numericValue(b);
    if (a.hasNumericDatatype() != b.hasNumericDatatype()) return Truth::Error;
    int cmp;
    if (na && nb) {
        cmp = *na < *nb ? -1 : (*na > *nb ? 1 : 0);
    } else if (na || nb) {
        // numeric datatype with an unparseable lexical form
        return Truth::Error;
    } else {
        const std::string& sa = a.toNTriples();
        const std::string& sb = b.toNTriples();
        cmp = sa < sb ? -1 : (sa > sb ? 1 : 0);
    }
    switch (op) {
        case FilterExpr::CompareOp::Eq: return truthOf(cmp == 0);
        case FilterExpr::CompareOp::Ne: return truthOf(cmp != 0);
        case FilterExpr::CompareOp::Lt: return truthOf(cmp < 0);
        case FilterExpr::CompareOp::Le: return truthOf(cmp <= 0);
        case FilterExpr::CompareOp::Gt: return truthOf(cmp > 0);
        case FilterExpr::CompareOp::Ge: return truthOf(cmp >= 0);
    }
    return Truth::Error;
}

const Term* resolveOperand(const PatternTerm& operand, const SolutionRow& row) {
    if (const auto* term = std::get_if<Term>(&operand)) return term;
    return row.find(std::get<Variable>(operand).name);
}

Truth evalFilter(const FilterExpr& e, const SolutionRow& row) {
    switch (e.kind) {
        case FilterExpr::Kind::And: {
            const Truth a = evalFilter(e.children[0], row);
            const Truth b = evalFilter(e.children[1], row);
            if (a == Truth::False || b == Truth::False) return Truth::False;
            if (a == Truth::Error || b == Truth::Error) return Truth::Error;
            return Truth::True;
        }
        case FilterExpr::Kind::Or: {
            const Truth a = evalFilter(e.children[0], row);
            const Truth b = evalFilter(e.children[1], row);
            if (a == Truth::True || b == Truth::True) return Truth::True;
            if (a == Truth::Error || b == Truth::Error) return Truth::Error;
            return Truth::False;
        }
        case FilterExpr::Kind::Not: {
            switch (evalFilter(e.children[0], row)) {
                case Truth::True: return Truth::False;
                case Truth::False: return Truth::True;
                case Truth::Error: return Truth::Error;
            }
            return Truth::Error;
        }
        case FilterExpr::Kind::Compare: {
            const Term* a = resolveOperand(e.lhs, row);
            const Term* b = resolveOperand(e.rhs, row);
            if (!a || !b) return Truth::Error;
            return compareTerms(e.op, *a, *b);
        }
        case FilterExpr::Kind::Regex: {
            const Term* subject = resolveOperand(e.lhs, row);
            if (!subject || !subject->isLiteral()) return Truth::Error;
            return truthOf(std::regex_search(subject->value(), *e.regex));
        }
    }
    return Truth::Error;
}

std::vector<SolutionRow> evalGroup(const GroupPattern& group, const Graph& g,
                                   std::vector<SolutionRow> rows) {
    std::set<std::string> alreadyBound;
    if (!rows.empty()) {
        for (const auto& [name, term] : rows.front().bindings) alreadyBound.insert(name);
    }
    for (const TriplePattern* tp : orderPatterns(group.triplePatterns, std::move(alreadyBound))) {
        rows = joinPattern(rows, *tp, g);
        if (rows.empty()) break;
    }
    for (const GroupPattern& optional : group.optionals) {
        std::vector<SolutionRow> next;
        for (SolutionRow& row : rows) {
            std::vector<SolutionRow> extended = evalGroup(optional, g, {row});
            if (extended.empty()) {
                next.push_back(std::move(row));
            } else {
                for (SolutionRow& e : extended) next.push_back(std::move(e));
            }
        }
        rows = std::move(next);
    }
    for (const FilterExpr& filter : group.filters) {
        std::vector<SolutionRow> kept;
        for (SolutionRow& row : rows) {
            if (evalFilter(filter, row) == Truth::True) kept.push_back(std::move(row));
        }
        rows = std::move(kept);
    }
    return rows;
}

// ORDER BY comparison for one key: unbound sorts first; two numeric literals
// compare numerically, everything else by N-Triples form.
int compareForOrder(const Term* a, const Term* b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    const auto na = numericValue(*a);
    const auto nb = numericValue(*b);
    if (na && nb) {
        if (*na < *nb) return -1;
        if (*na > *nb) return 1;
        return 0;
    }
    return a->toNTriples().compare(b->toNTriples());
}

}  // namespace

std::string defaultSortKey(const SolutionRow& row, const std::vector<std::string>& variables) {
    std::string key;
    for (const std::string& name : variables) {
        if (const Term* term = row.find(name)) {
            key += '\x01';
            key += term->toNTriples();
        }
        // terms never contain raw control bytes, so these cannot collide
        key += '\x00';
    }
    return key;
}

ResultSet evaluate(const SparqlQuery& query, const rdf::Graph& graph) {
    std::vector<SolutionRow> rows = evalGroup(query.where, graph, {SolutionRow{}});

    const std::vector<std::string> variables =
        query.selectAll ? patternVariables(query.where) : query.projection;

    const std::set<std::string> keep(variables.begin(), variables.end());
    for (SolutionRow& row : rows) {
        for (auto it = row.bindings.begin(); it != row.bindings.end();) {
            it = keep.count(it->first) ? std::next(it) : row.bindings.erase(it);
        }
    }

    if (query.orderBy.empty()) {
        std::sort(rows.begin(), rows.end(), [&](const SolutionRow& a, const SolutionRow& b) {
            return defaultSortKey(a, variables) < defaultSortKey(b, variables);
        });
    } else {
        std::stable_sort(rows.begin(), rows.end(),
                         [&](const SolutionRow& a, const SolutionRow& b) {
                             for (const OrderKey& key : query.orderBy) {
                                 int cmp = compareForOrder(a.find(key.variable.name),
                                                           b.find(key.variable.name));
                                 if (key.descending) cmp = -cmp;
                                 if (cmp != 0) return cmp < 0;
                             }
                             return false;
                         });
    }

    if (query.distinct) {
        std::set<std::string> seen;
        std::vector<SolutionRow> unique;
        for (SolutionRow& row : rows) {
            if (seen.insert(defaultSortKey(row, variables)).second) {
                unique.push_back(std::move(row));
            }
        }
        rows = std::move(unique);
    }

    if (query.offset) {
        rows.erase(rows.begin(),
                   rows.begin() + std::min<std::size_t>(*query.offset, rows.size()));
    }
    if (query.limit && rows.size() > *query.limit) rows.resize(*query.limit);

    return ResultSet{variables, std::move(rows)};
}

}  // namespace olmap::sparql
