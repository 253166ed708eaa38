#pragma once

#include <string>
#include <string_view>

#include "sparql/ast.hpp"
#include "support/error.hpp"

namespace olmap::sparql {

class SparqlSyntaxError : public Error {
public:
    SparqlSyntaxError(const std::string& message, TextPosition position)
        : Error("SPARQL syntax error at " + describePosition(position) + ": " + message),
          position_(position) {}

    TextPosition position() const { return position_; }

private:
    TextPosition position_;
};

// Raised for valid SPARQL constructs outside the supported subset; the
// message names the construct.
class UnsupportedFeatureError : public Error {
public:
    explicit UnsupportedFeatureError(const std::string& construct)
        : Error("unsupported SPARQL feature: " + construct), construct_(construct) {}

    const std::string& construct() const { return construct_; }

private:
    std::string construct_;
};

// Parses a SELECT query. Supported: BGP, OPTIONAL, FILTER (comparisons,
// &&/||/!, REGEX without flags), DISTINCT, ORDER BY, LIMIT, OFFSET and
// prefixed names. Everything else raises UnsupportedFeatureError.
SparqlQuery parseQuery(std::string_view text);

}  // namespace olmap::sparql
