#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mapping/model.hpp"
#include "support/error.hpp"
#include "tmpl/template.hpp"
#include "xml/dom.hpp"

namespace olmap::engine {

// How snippet instantiations meet container nodes when the container
// template itself carries variables.
//
// Cartesian appends every row's snippet to every resolved container node.
// RowPaired appends each row's snippet only to the nodes resolved from that
// row's own instantiated container path. For a variable-free container the
// two modes produce identical documents.
enum class PairingMode { Cartesian, RowPaired };

struct ExecutionConfig {
    std::string mappingPath;
    // May stay empty when writeOutput is false; the run then starts from an
    // empty document.
    std::string outputPath;
    PairingMode pairing = PairingMode::Cartesian;
    tmpl::Strictness strictness = tmpl::Strictness::Strict;
    bool pretty = false;
    // false builds the document and fills documentText without touching the
    // filesystem (dry runs).
    bool writeOutput = true;
    // Collect one trace line per row in ExecutionReport::traces.
    bool trace = false;
    std::string vocabularyNamespace = mapping::kDefaultVocabularyNamespace;
    int endpointTimeoutSeconds = 30;
};

struct DataMapReport {
    std::string mapIri;
    std::size_t rowCount = 0;
    // Distinct instantiated container paths resolved against the document.
    std::size_t containerInstancesResolved = 0;
    // Elements created by those resolutions.
    std::size_t containerNodesCreated = 0;
    // Snippet elements appended (comments inside snippets are copied along
    // but not counted).
    std::size_t snippetsInserted = 0;
};

struct ExecutionReport {
    bool succeeded = false;
    std::vector<DataMapReport> dataMaps;
    std::vector<std::string> warnings;
    std::vector<std::string> traces;
    // The serialized output document; empty when nothing was ever mapped
    // into an empty document.
    std::string documentText;
};

// Any failure of a run, tagged with the broad category that later becomes
// the process exit code.
class EngineError : public Error {
public:
    EngineError(ErrorCategory category, std::string message)
        : Error(std::move(message)), category_(category) {}

    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

// A file source (or the mapping document itself) does not exist.
class SourceNotFound : public EngineError {
public:
    explicit SourceNotFound(std::string message)
        : EngineError(ErrorCategory::Source, std::move(message)) {}
};

// An instantiated snippet failed to parse as an XML fragment.
class SnippetNotWellFormed : public EngineError {
public:
    explicit SnippetNotWellFormed(std::string message)
        : EngineError(ErrorCategory::Mapping, std::move(message)) {}
};

// Runs every data map in the mapping document against its source and
// upserts the results into the output document, in this order per map:
// resolve source, evaluate query, instantiate the container per row and
// deduplicate, resolve or create each distinct container path, instantiate
// the snippet per row, append the snippet elements per pairing mode. The
// document is written atomically (temp file + rename) only after every map
// succeeded; a failed run never leaves a partial file.
ExecutionReport execute(const ExecutionConfig& config);

// Parses one fully substituted snippet as an XML fragment and returns its
// top-level nodes: one or more elements, with comments preserved and
// whitespace-only text dropped. Throws SnippetNotWellFormed when the text
// does not parse, contains top-level character data, or holds no element.
std::vector<xml::XmlChild> instantiateSnippetFragment(const std::string& text);

}  // namespace olmap::engine
