#pragma once

#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "rdf/term.hpp"

namespace olmap::sparql {

struct Variable {
    std::string name;  // without the '?' sigil
    bool operator==(const Variable& other) const { return name == other.name; }
    bool operator<(const Variable& other) const { return name < other.name; }
};

// A pattern position: either a constant term or a variable.
using PatternTerm = std::variant<Variable, rdf::Term>;

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
};

// Filter expressions: comparisons and REGEX at the leaves, &&/||/! above.
struct FilterExpr {
    enum class Kind { And, Or, Not, Compare, Regex };
    enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

    Kind kind = Kind::Compare;
    CompareOp op = CompareOp::Eq;
    PatternTerm lhs;                      // Compare, Regex
    PatternTerm rhs;                      // Compare
    std::string regexPattern;             // Regex, for diagnostics
    std::shared_ptr<const std::regex> regex;  // Regex, compiled at parse time
    std::vector<FilterExpr> children;     // And/Or: two, Not: one
};

struct GroupPattern {
    std::vector<TriplePattern> triplePatterns;
    std::vector<GroupPattern> optionals;
    std::vector<FilterExpr> filters;
};

struct OrderKey {
    Variable variable;
    bool descending = false;
};

struct SparqlQuery {
    std::map<std::string, std::string> prefixes;
    bool distinct = false;
    bool selectAll = false;
    std::vector<std::string> projection;  // empty iff selectAll
    GroupPattern where;
    std::vector<OrderKey> orderBy;
    std::optional<std::size_t> limit;
    std::optional<std::size_t> offset;
    // Projected variables that appear nowhere in the pattern; they stay
    // unbound in every row, which the caller may want to warn about.
    std::vector<std::string> unboundProjection;
};

// Variables of the pattern (triple patterns and OPTIONAL groups, not
// filters), in first-appearance order. This is what SELECT * projects.
std::vector<std::string> patternVariables(const GroupPattern& group);

}  // namespace olmap::sparql
