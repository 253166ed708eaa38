#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rdf/graph.hpp"
#include "support/error.hpp"

namespace olmap::rdf {

class TurtleSyntaxError : public Error {
public:
    TurtleSyntaxError(const std::string& message, TextPosition position)
        : Error("Turtle syntax error at " + describePosition(position) + ": " + message),
          position_(position) {}

    TextPosition position() const { return position_; }

private:
    TextPosition position_;
};

class EncodingError : public Error {
public:
    EncodingError(const std::string& message, TextPosition position)
        : Error("encoding error at " + describePosition(position) + ": " + message),
          position_(position) {}

    TextPosition position() const { return position_; }

private:
    TextPosition position_;
};

// Parses a Turtle document (N-Triples is a degenerate Turtle document and
// needs no separate path). Supported: prefixes, @base/BASE, the 'a' keyword,
// predicate and object lists, numeric/boolean/string literals, blank node
// property lists. Collections and quoted triples raise TurtleSyntaxError
// naming the construct.
//
// Relative IRIs resolve against @base when declared, else against `baseIri`;
// a relative IRI with no base in scope is a syntax error.
Graph parseTurtle(std::string_view document, const std::optional<std::string>& baseIri = {});

// Serializes a graph as Turtle, abbreviating IRIs through `prefixes`
// (prefix -> namespace IRI). Blank nodes are relabeled b0, b1, ... in label
// order, so output re-parses to an isomorphic graph (an equal one when the
// graph is blank-node-free) and serializing that parse is a fixpoint.
std::string serializeTurtle(const Graph& graph,
                            const std::map<std::string, std::string>& prefixes = {});

}  // namespace olmap::rdf
