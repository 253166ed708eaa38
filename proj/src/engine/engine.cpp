#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unistd.h>
#include <utility>

#include "endpoint/client.hpp"
#include "engine/engine.hpp"
#include "rdf/turtle.hpp"
#include "sparql/eval.hpp"
#include "sparql/parser.hpp"
#include "support/text.hpp"
#include "xml/parser.hpp"
#include "xml/serializer.hpp"
#include "xpath/container.hpp"

namespace olmap::engine {
namespace {

namespace fs = std::filesystem;

std::string readTextFile(const std::string& path, ErrorCategory category,
                         const std::string& what) {
    std::error_code ec;
    const fs::file_status status = fs::status(path, ec);
    if (status.type() == fs::file_type::not_found) {
        throw SourceNotFound(what + " '" + path + "' does not exist");
    }
    if (ec) {
        throw EngineError(category, "cannot access " + what + " '" + path + "': " + ec.message());
    }
    if (fs::is_directory(status)) {
        throw EngineError(category, "cannot read " + what + " '" + path + "': it is a directory");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw EngineError(category,
                          "cannot open " + what + " '" + path + "': " + std::strerror(errno));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw EngineError(category,
                          "cannot read " + what + " '" + path + "': " + std::strerror(errno));
    }
    return buffer.str();
}

// Relative file sources travel with the mapping document.
std::string resolveSourcePath(const std::string& location, const std::string& mappingPath) {
    const fs::path source(location);
    if (source.is_absolute()) return source.string();
    return (fs::path(mappingPath).parent_path() / source).string();
}

std::string baseIriFor(const std::string& path) {
    std::error_code ec;
    const fs::path absolute = fs::absolute(path, ec);
    return text::fileIriForPath(ec ? path : absolute.string());
}

void atomicWrite(const std::string& path, const std::string& content) {
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp" + std::to_string(static_cast<long>(::getpid()));

    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw EngineError(ErrorCategory::Output, "cannot open temporary file '" + temp.string() +
                                                     "': " + std::strerror(errno));
    }
    out << content;
    out.close();
    if (out.fail()) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw EngineError(ErrorCategory::Output,
                          "cannot write '" + temp.string() + "': " + std::strerror(errno));
    }

    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw EngineError(ErrorCategory::Output,
                          "cannot replace '" + path + "': " + ec.message());
    }
}

rdf::Graph loadMappingGraph(const std::string& path) {
    const std::string content = readTextFile(path, ErrorCategory::Source, "mapping file");
    try {
        return rdf::parseTurtle(content, baseIriFor(path));
    } catch (const Error& error) {
        throw EngineError(ErrorCategory::Mapping,
                          "mapping file '" + path + "': " + error.what());
    }
}

// One execute() call shares parsed file sources between data maps.
class SourceCache {
public:
    explicit SourceCache(std::string mappingPath) : mappingPath_(std::move(mappingPath)) {}

    const rdf::Graph& fileGraph(const std::string& location, const std::string& context) {
        const std::string resolved = resolveSourcePath(location, mappingPath_);
        const auto cached = graphs_.find(resolved);
        if (cached != graphs_.end()) return cached->second;

        std::string content;
        try {
            content = readTextFile(resolved, ErrorCategory::Source, "source file");
        } catch (const SourceNotFound& error) {
            throw SourceNotFound(context + ": " + error.what());
        } catch (const EngineError& error) {
            throw EngineError(error.category(), context + ": " + error.what());
        }
        try {
            return graphs_.emplace(resolved, rdf::parseTurtle(content, baseIriFor(resolved)))
                .first->second;
        } catch (const Error& error) {
            throw EngineError(ErrorCategory::Source, context + ": source file '" + resolved +
                                                         "': " + error.what());
        }
    }

private:
    std::string mappingPath_;
    std::map<std::string, rdf::Graph> graphs_;
};

sparql::ResultSet runQuery(const mapping::DataMap& map, const ExecutionConfig& config,
                           SourceCache& sources, const std::string& context) {
    if (map.source.kind == mapping::SourceKind::File) {
        const rdf::Graph& graph = sources.fileGraph(map.source.location, context);
        try {
            return sparql::evaluate(sparql::parseQuery(map.source.queryText), graph);
        } catch (const Error& error) {
            throw EngineError(ErrorCategory::Mapping, context + ": " + error.what());
        }
    }

    // Endpoint queries travel verbatim; the endpoint may well support more
    // SPARQL than local evaluation does.
    endpoint::EndpointConfig remote{map.source.location, config.endpointTimeoutSeconds, {}};
    try {
        return endpoint::executeSelect(remote, map.source.queryText);
    } catch (const Error& error) {
        throw EngineError(ErrorCategory::Source, context + ": " + error.what());
    }
}

std::string instantiateOrRethrow(const tmpl::Template& tmplate, const sparql::SolutionRow& row,
                                 tmpl::EscapeMode mode, const ExecutionConfig& config,
                                 std::vector<std::string>* warnings,
                                 const std::string& context) {
    try {
        return tmpl::instantiate(tmplate, row, mode, config.strictness, warnings);
    } catch (const Error& error) {
        throw EngineError(ErrorCategory::Mapping, context + ": " + error.what());
    }
}

std::string describeRow(const sparql::SolutionRow& row) {
    std::string described;
    for (const auto& [name, term] : row.bindings) {
        if (!described.empty()) described += ", ";
        described += name + "='" + term.toText() + "'";
    }
    return described.empty() ? "(no bindings)" : described;
}

// Appends clones of one snippet's nodes to a container node, counting the
// elements among them.
void appendSnippet(xml::XmlElement& node, const std::vector<xml::XmlChild>& snippet,
                   std::size_t& inserted) {
    for (const xml::XmlChild& child : snippet) {
        node.children.push_back(xml::cloneChild(child));
        if (std::holds_alternative<std::unique_ptr<xml::XmlElement>>(child)) ++inserted;
    }
}

void runDataMap(const mapping::DataMap& map, const ExecutionConfig& config,
                SourceCache& sources, xml::XmlDocument& document, ExecutionReport& report) {
    DataMapReport stats;
    stats.mapIri = map.iri.toText();
    const std::string context = "data map <" + stats.mapIri + ">";

    const sparql::ResultSet rows = runQuery(map, config, sources, context);
    stats.rowCount = rows.rows.size();
    if (rows.rows.empty()) {
        report.warnings.push_back(context + ": query returned no rows; nothing to insert");
        report.dataMaps.push_back(stats);
        return;
    }

    // Instantiate the container for every row, then fold duplicates so one
    // target path is resolved (and possibly created) once.
    std::vector<std::string> rowContainers;
    std::vector<std::string> distinctContainers;
    for (std::size_t index = 0; index < rows.rows.size(); ++index) {
        std::vector<std::string> warnings;
        std::string instantiated = instantiateOrRethrow(
            map.containerTemplate, rows.rows[index], tmpl::EscapeMode::PathValue, config,
            &warnings, context + ", row " + std::to_string(index + 1) + ", container");
        for (const std::string& warning : warnings) {
            report.warnings.push_back(context + ": " + warning);
        }
        if (std::find(distinctContainers.begin(), distinctContainers.end(), instantiated) ==
            distinctContainers.end()) {
            distinctContainers.push_back(instantiated);
        }
        rowContainers.push_back(std::move(instantiated));
    }

    std::map<std::string, std::vector<xml::XmlElement*>> nodesByContainer;
    for (const std::string& containerText : distinctContainers) {
        xpath::ContainerPath path;
        try {
            path = xpath::parseContainer(containerText);
        } catch (const Error& error) {
            throw EngineError(ErrorCategory::Mapping, context + ": container \"" +
                                                          containerText + "\": " + error.what());
        }
        try {
            xpath::ResolveResult resolved = xpath::resolveOrCreate(document, path);
            stats.containerNodesCreated += resolved.created;
            nodesByContainer.emplace(containerText, std::move(resolved.nodes));
        } catch (const Error& error) {
            throw EngineError(ErrorCategory::Output, context + ": " + error.what());
        }
    }
    stats.containerInstancesResolved = distinctContainers.size();

    std::vector<std::vector<xml::XmlChild>> snippets;
    for (std::size_t index = 0; index < rows.rows.size(); ++index) {
        const std::string rowContext = context + ", row " + std::to_string(index + 1);
        std::vector<std::string> warnings;
        const std::string instantiated =
            instantiateOrRethrow(map.snippetTemplate, rows.rows[index], tmpl::EscapeMode::Xml,
                                 config, &warnings, rowContext + ", snippet");
        for (const std::string& warning : warnings) {
            report.warnings.push_back(context + ": " + warning);
        }
        try {
            snippets.push_back(instantiateSnippetFragment(instantiated));
        } catch (const SnippetNotWellFormed& error) {
            throw SnippetNotWellFormed(rowContext + ": " + error.what());
        }
        if (config.trace) {
            report.traces.push_back(rowContext + ": " + describeRow(rows.rows[index]) +
                                    " -> container \"" + rowContainers[index] + "\"");
        }
    }

    if (config.pairing == PairingMode::Cartesian) {
        // Every row's snippet lands in every resolved node. Distinct paths
        // can still resolve to one node, so de-duplicate by address.
        std::vector<xml::XmlElement*> allNodes;
        for (const std::string& containerText : distinctContainers) {
            for (xml::XmlElement* node : nodesByContainer[containerText]) {
                if (std::find(allNodes.begin(), allNodes.end(), node) == allNodes.end()) {
                    allNodes.push_back(node);
                }
            }
        }
        for (xml::XmlElement* node : allNodes) {
            for (const auto& snippet : snippets) {
                appendSnippet(*node, snippet, stats.snippetsInserted);
            }
        }
    } else {
        for (std::size_t index = 0; index < rows.rows.size(); ++index) {
            for (xml::XmlElement* node : nodesByContainer[rowContainers[index]]) {
                appendSnippet(*node, snippets[index], stats.snippetsInserted);
            }
        }
    }

    report.dataMaps.push_back(stats);
}

}  // namespace

std::vector<xml::XmlChild> instantiateSnippetFragment(const std::string& text) {
    std::vector<xml::XmlChild> nodes;
    try {
        nodes = xml::parseFragment(text);
    } catch (const Error& error) {
        throw SnippetNotWellFormed(std::string("snippet is not well-formed: ") + error.what());
    }

    std::vector<xml::XmlChild> kept;
    bool hasElement = false;
    for (xml::XmlChild& node : nodes) {
        if (const xml::XmlText* textNode = std::get_if<xml::XmlText>(&node)) {
            if (textNode->text.find_first_not_of(" \t\n") == std::string::npos) continue;
            throw SnippetNotWellFormed(
                "snippet is not well-formed: character data is not allowed at the top level");
        }
        hasElement = hasElement || std::holds_alternative<std::unique_ptr<xml::XmlElement>>(node);
        kept.push_back(std::move(node));
    }
    if (!hasElement) {
        throw SnippetNotWellFormed("snippet is not well-formed: it contains no element");
    }
    return kept;
}

ExecutionReport execute(const ExecutionConfig& config) {
    if (config.mappingPath.empty()) {
        throw EngineError(ErrorCategory::Usage, "no mapping file given");
    }
    if (config.writeOutput && config.outputPath.empty()) {
        throw EngineError(ErrorCategory::Usage, "no output file given");
    }
    if (config.endpointTimeoutSeconds <= 0) {
        throw EngineError(ErrorCategory::Usage, "endpoint timeout must be positive, got " +
                                                    std::to_string(config.endpointTimeoutSeconds));
    }

    mapping::MappingVocabulary vocabulary = mapping::MappingVocabulary::standard();
    if (config.vocabularyNamespace != mapping::kDefaultVocabularyNamespace) {
        try {
            vocabulary = mapping::MappingVocabulary::withNamespace(config.vocabularyNamespace);
        } catch (const std::invalid_argument& error) {
            throw EngineError(ErrorCategory::Usage,
                              std::string("vocabulary namespace: ") + error.what());
        }
    }

    const rdf::Graph mappingGraph = loadMappingGraph(config.mappingPath);
    mapping::LoadResult loaded;
    try {
        loaded = mapping::loadMappings(mappingGraph, vocabulary);
    } catch (const Error& error) {
        throw EngineError(ErrorCategory::Mapping,
                          "mapping file '" + config.mappingPath + "': " + error.what());
    }

    ExecutionReport report;
    report.warnings = loaded.warnings;

    xml::XmlDocument document;
    if (!config.outputPath.empty()) {
        try {
            document = xml::openOrCreate(config.outputPath);
        } catch (const Error& error) {
            throw EngineError(ErrorCategory::Output,
                              "output file '" + config.outputPath + "': " + error.what());
        }
    }

    SourceCache sources(config.mappingPath);
    for (const mapping::DataMap& map : loaded.maps) {
        runDataMap(map, config, sources, document, report);
    }

    if (document.hasRoot()) {
        report.documentText = xml::serializeXml(document, config.pretty);
    } else {
        report.warnings.push_back("the output document is empty; nothing to write");
    }

    if (config.writeOutput && document.hasRoot()) {
        atomicWrite(config.outputPath, report.documentText);
    }
    report.succeeded = true;
    return report;
}

}  // namespace olmap::engine
