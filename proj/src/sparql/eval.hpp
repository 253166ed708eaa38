#pragma once

#include "rdf/graph.hpp"
#include "sparql/ast.hpp"
#include "sparql/result.hpp"

namespace olmap::sparql {

// Evaluates a SELECT query against a graph. Pure function: rows follow BGP
// join semantics with OPTIONAL as left-join and FILTER inside its group.
// Without ORDER BY, rows are sorted lexicographically by the N-Triples forms
// of the projected bindings (unbound first), so results are reproducible;
// DISTINCT, OFFSET and LIMIT apply after sorting.
ResultSet evaluate(const SparqlQuery& query, const rdf::Graph& graph);

// The sort key evaluate() uses by default; exposed so other result producers
// can order rows the same way.
std::string defaultSortKey(const SolutionRow& row, const std::vector<std::string>& variables);

}  // namespace olmap::sparql
