#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdf/term.hpp"

namespace olmap::sparql {

// One solution: a partial binding of variable names to terms. OPTIONAL can
// leave variables unbound, so absence from the map is meaningful.
struct SolutionRow {
    std::map<std::string, rdf::Term> bindings;

    const rdf::Term* find(const std::string& variable) const {
        const auto it = bindings.find(variable);
        return it == bindings.end() ? nullptr : &it->second;
    }

    bool operator==(const SolutionRow& other) const { return bindings == other.bindings; }
    bool operator!=(const SolutionRow& other) const { return !(*this == other); }
};

struct ResultSet {
    std::vector<std::string> variables;
    std::vector<SolutionRow> rows;

    bool operator==(const ResultSet& other) const {
        return variables == other.variables && rows == other.rows;
    }
};

}  // namespace olmap::sparql
