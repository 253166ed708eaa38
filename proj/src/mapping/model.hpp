#pragma once

#include <string>
#include <vector>

#include "rdf/graph.hpp"
#include "support/error.hpp"
#include "tmpl/template.hpp"

namespace olmap::mapping {

// One or more data maps failed shape validation. Every problem found is
// listed, grouped by data map, so authors can fix a document in one pass.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : Error(joinIssues(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string joinIssues(const std::vector<std::string>& issues);

    std::vector<std::string> issues_;
};

class UnsupportedQueryLanguage : public Error {
public:
    explicit UnsupportedQueryLanguage(const std::string& language)
        : Error("unsupported query language " + language +
                ": only SPARQL is supported"),
          language_(language) {}

    const std::string& language() const { return language_; }

private:
    std::string language_;
};

// The property and class IRIs a mapping document uses. All live in one
// namespace so an alternative vocabulary is a single different IRI prefix.
struct MappingVocabulary {
    std::string namespaceIri;
    rdf::Term dataMapClass;
    rdf::Term ontologicalSource;
    rdf::Term source;
    rdf::Term sourceType;
    rdf::Term fileKind;
    rdf::Term endpointKind;
    rdf::Term queryLanguage;
    rdf::Term sparqlLanguage;
    rdf::Term query;
    rdf::Term container;
    rdf::Term snippet;

    static MappingVocabulary withNamespace(const std::string& namespaceIri);
    // The namespace documents and tests use unless overridden.
    static const MappingVocabulary& standard();
};

inline constexpr const char* kDefaultVocabularyNamespace = "urn:olmap:vocab#";

enum class SourceKind { File, Endpoint };

struct OntologicalSource {
    SourceKind kind = SourceKind::File;
    std::string location;  // file path, or http(s) URL for endpoints
    std::string queryText;
};

struct DataMap {
    rdf::Term iri;
    OntologicalSource source;
    tmpl::Template containerTemplate;
    tmpl::Template snippetTemplate;
};

struct LoadResult {
    std::vector<DataMap> maps;
    std::vector<std::string> warnings;
};

// Finds every subject with rdf:type = vocab.dataMapClass and reads it into a
// DataMap, ordered lexicographically by subject IRI (later maps see the XML
// earlier ones produced, so the order is part of the contract). Shape
// problems raise ValidationError; a non-SPARQL query language raises
// UnsupportedQueryLanguage; a document with no data maps at all is legal and
// only adds a warning. Whether a file source's path exists is checked at
// execution time, not here.
LoadResult loadMappings(const rdf::Graph& graph, const MappingVocabulary& vocab);

}  // namespace olmap::mapping
