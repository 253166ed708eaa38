#include "mapping/model.hpp"

#include <algorithm>

#include "support/text.hpp"

namespace olmap::mapping {

std::string ValidationError::joinIssues(const std::vector<std::string>& issues) {
    std::string message = "invalid mapping document:";
    for (const std::string& issue : issues) {
        message += "\n  - " + issue;
    }
    return message;
}

MappingVocabulary MappingVocabulary::withNamespace(const std::string& namespaceIri) {
    const auto term = [&](const char* local) { return rdf::Term::iri(namespaceIri + local); };
    return MappingVocabulary{
        namespaceIri,
        term("DataMap"),
        term("ontologicalSource"),
        term("source"),
        term("sourceType"),
        term("File"),
        term("Endpoint"),
        term("queryLanguage"),
        term("SPARQL"),
        term("query"),
        term("container"),
        term("snippet"),
    };
}

const MappingVocabulary& MappingVocabulary::standard() {
    static const MappingVocabulary vocab = withNamespace(kDefaultVocabularyNamespace);
    return vocab;
}

namespace {

std::vector<rdf::Term> objectsOf(const rdf::Graph& graph, const rdf::Term& subject,
                                 const rdf::Term& predicate) {
    std::vector<rdf::Term> objects;
    for (const rdf::Triple& triple : graph.match(subject, predicate, std::nullopt)) {
        objects.push_back(triple.object);
    }
    return objects;
}

// Reads one required single-valued property; problems land in `issues` and
// the value is absent until the shape is right.
std::optional<rdf::Term> single(const rdf::Graph& graph, const rdf::Term& subject,
                                const rdf::Term& predicate, const std::string& mapLabel,
                                const std::string& propertyLabel,
                                std::vector<std::string>& issues) {
    const std::vector<rdf::Term> objects = objectsOf(graph, subject, predicate);
    if (objects.empty()) {
        issues.push_back(mapLabel + " is missing " + propertyLabel);
        return std::nullopt;
    }
    if (objects.size() > 1) {
        issues.push_back(mapLabel + " has " + std::to_string(objects.size()) + " values for " +
                         propertyLabel + "; exactly one is allowed");
        return std::nullopt;
    }
    return objects.front();
}

std::optional<tmpl::Template> parseTemplateProperty(const rdf::Term& value,
                                                    const std::string& mapLabel,
                                                    const std::string& propertyLabel,
                                                    std::vector<std::string>& issues) {
    if (!value.isLiteral()) {
        issues.push_back(mapLabel + ": " + propertyLabel + " must be a string literal");
        return std::nullopt;
    }
    try {
        return tmpl::parseTemplate(value.toText());
    } catch (const tmpl::TemplateSyntaxError& e) {
        issues.push_back(mapLabel + ": " + propertyLabel + ": " + e.what());
        return std::nullopt;
    }
}

}  // namespace

LoadResult loadMappings(const rdf::Graph& graph, const MappingVocabulary& vocab) {
    const rdf::Term typePredicate = rdf::Term::iri(rdf::iris::rdfType);

    std::vector<rdf::Term> subjects;
    for (const rdf::Triple& triple :
         graph.match(std::nullopt, typePredicate, vocab.dataMapClass)) {
        subjects.push_back(triple.subject);
    }
    std::sort(subjects.begin(), subjects.end(),
              [](const rdf::Term& a, const rdf::Term& b) { return a.toText() < b.toText(); });

    LoadResult result;
    if (subjects.empty()) {
        result.warnings.push_back(
            "the mapping document defines no data maps; nothing will be mapped");
        return result;
    }

    std::vector<std::string> issues;
    for (const rdf::Term& subject : subjects) {
        const std::string label = "data map " + subject.toNTriples();
        if (!subject.isIri()) {
            issues.push_back(label + ": a data map must be named by an IRI");
            continue;
        }

        DataMap map{subject, {}, {}, {}};
        std::size_t issuesBefore = issues.size();

        if (const auto sourceNode =
                single(graph, subject, vocab.ontologicalSource, label, "an ontological source",
                       issues)) {
            const std::string sourceLabel = label + ": ontological source";

            if (const auto location = single(graph, *sourceNode, vocab.source, sourceLabel,
                                             "a source location", issues)) {
                if (location->isBlankNode()) {
                    issues.push_back(sourceLabel +
                                     ": the source location must be a literal or IRI");
                } else {
                    map.source.location = location->toText();
                    if (map.source.location.empty()) {
                        issues.push_back(sourceLabel + ": the source location is empty");
                    }
                }
            }

            if (const auto kind = single(graph, *sourceNode, vocab.sourceType, sourceLabel,
                                         "a source type", issues)) {
                if (*kind == vocab.fileKind) {
                    map.source.kind = SourceKind::File;
                } else if (*kind == vocab.endpointKind) {
                    map.source.kind = SourceKind::Endpoint;
                } else {
                    issues.push_back(sourceLabel + ": unrecognized source type " +
                                     kind->toNTriples() + " (expected " +
                                     vocab.fileKind.toNTriples() + " or " +
                                     vocab.endpointKind.toNTriples() + ")");
                }
            }

            if (const auto language = single(graph, *sourceNode, vocab.queryLanguage,
                                             sourceLabel, "a query language", issues)) {
                const bool isSparql =
                    *language == vocab.sparqlLanguage ||
                    (language->isLiteral() && language->toText() == "SPARQL");
                if (!isSparql) throw UnsupportedQueryLanguage(language->toNTriples());
            }

            if (const auto queryText = single(graph, *sourceNode, vocab.query, sourceLabel,
                                              "a query", issues)) {
                if (!queryText->isLiteral()) {
                    issues.push_back(sourceLabel + ": the query must be a string literal");
                } else {
                    map.source.queryText = queryText->toText();
                }
            }
        }

        if (const auto containerText =
                single(graph, subject, vocab.container, label, "a container", issues)) {
            if (auto parsed =
                    parseTemplateProperty(*containerText, label, "container", issues)) {
                if (parsed->source.empty()) {
                    issues.push_back(label + ": the container must not be empty");
                } else {
                    map.containerTemplate = std::move(*parsed);
                }
            }
        }

        if (const auto snippetText =
                single(graph, subject, vocab.snippet, label, "a snippet", issues)) {
            if (auto parsed = parseTemplateProperty(*snippetText, label, "snippet", issues)) {
                map.snippetTemplate = std::move(*parsed);
            }
        }

        if (map.source.kind == SourceKind::Endpoint && !map.source.location.empty()) {
            const bool httpLike = map.source.location.rfind("http://", 0) == 0 ||
                                  map.source.location.rfind("https://", 0) == 0;
            if (!httpLike) {
                issues.push_back(label + ": an endpoint source needs an absolute http(s) URL, got '" +
                                 map.source.location + "'");
            }
        }

        if (issues.size() == issuesBefore) {
            result.maps.push_back(std::move(map));
        }
    }

    if (!issues.empty()) throw ValidationError(std::move(issues));
    return result;
}

}  // namespace olmap::mapping
