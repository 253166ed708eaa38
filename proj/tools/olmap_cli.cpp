#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "olmap/olmap.h"

namespace {

// Multi-line engine messages (validation issue lists) become one greppable
// line on standard error.
std::string oneLine(const char* message) {
    std::string out;
    for (const char* p = message == nullptr ? "" : message; *p != '\0'; ++p) {
        char c = *p;
        if (c == '\n' || c == '\t') c = ' ';
        if (c == ' ' && !out.empty() && out.back() == ' ') continue;
        out += c;
    }
    return out;
}

void printSummary(const olmap_report* report, bool verbose) {
    for (size_t i = 0; i < olmap_report_data_map_count(report); ++i) {
        std::fprintf(stderr, "data map <%s>: %zu rows, %zu containers resolved (%zu created), %zu snippets inserted\n",
                     olmap_report_data_map_iri(report, i), olmap_report_rows(report, i),
                     olmap_report_containers_resolved(report, i),
                     olmap_report_containers_created(report, i),
                     olmap_report_snippets_inserted(report, i));
    }
    if (verbose) {
        for (size_t i = 0; i < olmap_report_trace_count(report); ++i) {
            std::fprintf(stderr, "%s\n", olmap_report_trace(report, i));
        }
    }
    for (size_t i = 0; i < olmap_report_warning_count(report); ++i) {
        std::fprintf(stderr, "warning: %s\n", oneLine(olmap_report_warning(report, i)).c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maps RDF data into an XML document as declared by a Turtle mapping definition."};
    app.set_version_flag("--version", olmap_version());

    std::string mappingPath;
    std::string outputPath;
    std::string pairing = "cartesian";
    std::string vocabularyNamespace;
    int endpointTimeout = 30;
    bool pretty = false;
    bool strict = false;
    bool lenient = false;
    bool dryRun = false;
    bool verbose = false;

    app.add_option("-m,--mapping", mappingPath, "Turtle mapping definition file")->required();
    app.add_option("-o,--output", outputPath, "XML document to create or update");
    app.add_flag("--pretty", pretty, "Indent the output document");
    app.add_option("--pairing", pairing,
                   "How rows pair with container nodes when the container has variables: "
                   "'cartesian' inserts every row into every node, 'row' pairs each row "
                   "with its own container")
        ->check(CLI::IsMember({"cartesian", "row"}))
        ->capture_default_str();
    CLI::Option* strictFlag =
        app.add_flag("--strict", strict, "Fail on unbound variables (the default)");
    app.add_flag("--lenient", lenient, "Substitute empty strings for unbound variables")
        ->excludes(strictFlag);
    app.add_flag("--dry-run", dryRun,
                 "Print the resulting document to standard output and write nothing");
    app.add_option("--vocab-ns", vocabularyNamespace,
                   "Namespace IRI of the mapping vocabulary");
    CLI::Option* timeoutOption =
        app.add_option("--endpoint-timeout", endpointTimeout,
                       "SPARQL endpoint timeout in seconds")
            ->envname("MAPPER_ENDPOINT_TIMEOUT")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    app.add_flag("--verbose", verbose, "Print per-row substitution traces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        return app.exit(error) == 0 ? 0 : 1;
    }

    if (!dryRun && outputPath.empty()) {
        std::fprintf(stderr, "olmap: --output is required unless --dry-run is given\n");
        return 1;
    }

    // An unusable environment value is skipped by the parser; say so rather
    // than switch to the default silently.
    if (timeoutOption->count() == 0) {
        const char* fromEnvironment = std::getenv("MAPPER_ENDPOINT_TIMEOUT");
        if (fromEnvironment != nullptr && *fromEnvironment != '\0') {
            std::fprintf(stderr,
                         "olmap: ignoring MAPPER_ENDPOINT_TIMEOUT='%s' (not a positive number "
                         "of seconds); using %d\n",
                         fromEnvironment, endpointTimeout);
        }
    }

    olmap_config* config = olmap_config_new(mappingPath.c_str(), outputPath.c_str());
    if (config == nullptr) {
        std::fprintf(stderr, "olmap: out of memory\n");
        return OLMAP_OUTPUT_ERROR;
    }
    olmap_config_set_pretty(config, pretty ? 1 : 0);
    olmap_config_set_pairing(config,
                             pairing == "row" ? OLMAP_PAIRING_ROW : OLMAP_PAIRING_CARTESIAN);
    olmap_config_set_lenient(config, lenient ? 1 : 0);
    olmap_config_set_dry_run(config, dryRun ? 1 : 0);
    olmap_config_set_trace(config, verbose ? 1 : 0);
    if (!vocabularyNamespace.empty()) {
        olmap_config_set_vocabulary_namespace(config, vocabularyNamespace.c_str());
    }
    olmap_config_set_endpoint_timeout(config, endpointTimeout);

    olmap_report* report = nullptr;
    const olmap_status status = olmap_execute(config, &report);
    olmap_config_free(config);
    if (status != OLMAP_OK) {
        std::fprintf(stderr, "olmap: %s\n", oneLine(olmap_last_error()).c_str());
        return static_cast<int>(status);
    }

    printSummary(report, verbose);
    if (dryRun) {
        std::fputs(olmap_report_document(report), stdout);
    }
    olmap_report_free(report);
    return 0;
}
