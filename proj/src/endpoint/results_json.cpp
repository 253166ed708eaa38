#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "endpoint/client.hpp"
#include "json.hpp"
#include "sparql/eval.hpp"

namespace olmap::endpoint {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& detail) {
    throw ResultFormatError("malformed SPARQL results JSON: " + detail);
}

std::string rowLabel(std::size_t rowNumber, const std::string& variable) {
    return "row " + std::to_string(rowNumber) + ", variable '" + variable + "'";
}

// One entry of a bindings object, e.g. {"type":"uri","value":"http://..."}.
rdf::Term decodeBinding(std::size_t rowNumber, const std::string& variable, const json& binding) {
    const std::string label = rowLabel(rowNumber, variable);
    if (!binding.is_object()) fail(label + ": binding is not an object");

    const auto type = binding.find("type");
    if (type == binding.end() || !type->is_string()) {
        fail(label + ": binding has no \"type\" string");
    }
    const auto value = binding.find("value");
    if (value == binding.end() || !value->is_string()) {
        fail(label + ": binding has no \"value\" string");
    }
    const std::string kind = type->get<std::string>();
    std::string text = value->get<std::string>();

    try {
        if (kind == "uri") return rdf::Term::iri(std::move(text));
        if (kind == "bnode") return rdf::Term::blankNode(std::move(text));
        if (kind == "literal" || kind == "typed-literal") {
            // RDF 1.1 allows a language-tagged literal to also carry the
            // rdf:langString datatype; the language tag wins here.
            if (const auto lang = binding.find("xml:lang"); lang != binding.end()) {
                if (!lang->is_string()) fail(label + ": \"xml:lang\" is not a string");
                return rdf::Term::langLiteral(std::move(text), lang->get<std::string>());
            }
            if (const auto datatype = binding.find("datatype"); datatype != binding.end()) {
                if (!datatype->is_string()) fail(label + ": \"datatype\" is not a string");
                return rdf::Term::literal(std::move(text), datatype->get<std::string>());
            }
            return rdf::Term::literal(std::move(text));
        }
    } catch (const std::invalid_argument& error) {
        fail(label + ": " + error.what());
    }
    fail(label + ": unknown binding type '" + kind + "'");
}

}  // namespace

sparql::ResultSet parseResultsJson(const std::string& body) {
    json document;
    try {
        document = json::parse(body);
    } catch (const json::parse_error& error) {
        fail(std::string("cannot parse the response body: ") + error.what());
    }
    if (!document.is_object()) fail("the top level is not an object");

    const auto head = document.find("head");
    if (head == document.end() || !head->is_object()) fail("missing \"head\" object");
    const auto vars = head->find("vars");
    if (vars == head->end() || !vars->is_array()) fail("missing \"head\".\"vars\" array");

    sparql::ResultSet result;
    for (const json& name : *vars) {
        if (!name.is_string()) fail("\"head\".\"vars\" entries must be strings");
        result.variables.push_back(name.get<std::string>());
    }

    const auto results = document.find("results");
    if (results == document.end() || !results->is_object()) fail("missing \"results\" object");
    const auto bindings = results->find("bindings");
    if (bindings == results->end() || !bindings->is_array()) {
        fail("missing \"results\".\"bindings\" array");
    }

    const std::set<std::string> declared(result.variables.begin(), result.variables.end());
    std::size_t rowNumber = 0;
    for (const json& rowJson : *bindings) {
        ++rowNumber;
        if (!rowJson.is_object()) {
            fail("row " + std::to_string(rowNumber) + " is not an object");
        }
        sparql::SolutionRow row;
        for (const auto& [name, binding] : rowJson.items()) {
            if (declared.count(name) == 0) {
                fail("row " + std::to_string(rowNumber) + " binds variable '" + name +
                     "', which \"head\".\"vars\" does not declare");
            }
            row.bindings.emplace(name, decodeBinding(rowNumber, name, binding));
        }
        result.rows.push_back(std::move(row));
    }

    // Endpoints answer in whatever order suits them; impose the same order
    // local evaluation uses so both source kinds are interchangeable.
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [&](const sparql::SolutionRow& a, const sparql::SolutionRow& b) {
                         return sparql::defaultSortKey(a, result.variables) <
                                sparql::defaultSortKey(b, result.variables);
                     });
    return result;
}

}  // namespace olmap::endpoint
