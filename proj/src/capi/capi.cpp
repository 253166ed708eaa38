#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "engine/engine.hpp"
#include "olmap/olmap.h"

using olmap::ErrorCategory;

struct olmap_config {
    olmap::engine::ExecutionConfig config;
};

struct olmap_report {
    olmap::engine::ExecutionReport report;
};

namespace {

thread_local std::string g_lastError;

olmap_status statusOf(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Usage: return OLMAP_USAGE_ERROR;
        case ErrorCategory::Mapping: return OLMAP_MAPPING_ERROR;
        case ErrorCategory::Source: return OLMAP_SOURCE_ERROR;
        case ErrorCategory::Output: return OLMAP_OUTPUT_ERROR;
    }
    return OLMAP_OUTPUT_ERROR;
}

olmap_status failWith(olmap_status status, std::string message) {
    g_lastError = std::move(message);
    return status;
}

const olmap::engine::DataMapReport* statsAt(const olmap_report* report, size_t index) {
    if (report == nullptr || index >= report->report.dataMaps.size()) return nullptr;
    return &report->report.dataMaps[index];
}

}  // namespace

extern "C" {

olmap_config* olmap_config_new(const char* mapping_path, const char* output_path) {
    try {
        auto* handle = new olmap_config;
        handle->config.mappingPath = mapping_path == nullptr ? "" : mapping_path;
        handle->config.outputPath = output_path == nullptr ? "" : output_path;
        return handle;
    } catch (const std::bad_alloc&) {
        return nullptr;
    }
}

void olmap_config_free(olmap_config* config) { delete config; }

void olmap_config_set_pretty(olmap_config* config, int enabled) {
    if (config != nullptr) config->config.pretty = enabled != 0;
}

void olmap_config_set_pairing(olmap_config* config, olmap_pairing pairing) {
    if (config == nullptr) return;
    config->config.pairing = pairing == OLMAP_PAIRING_ROW
                                 ? olmap::engine::PairingMode::RowPaired
                                 : olmap::engine::PairingMode::Cartesian;
}

void olmap_config_set_lenient(olmap_config* config, int enabled) {
    if (config == nullptr) return;
    config->config.strictness =
        enabled != 0 ? olmap::tmpl::Strictness::Lenient : olmap::tmpl::Strictness::Strict;
}

void olmap_config_set_dry_run(olmap_config* config, int enabled) {
    if (config != nullptr) config->config.writeOutput = enabled == 0;
}

void olmap_config_set_trace(olmap_config* config, int enabled) {
    if (config != nullptr) config->config.trace = enabled != 0;
}

void olmap_config_set_vocabulary_namespace(olmap_config* config, const char* iri) {
    if (config != nullptr && iri != nullptr) config->config.vocabularyNamespace = iri;
}

void olmap_config_set_endpoint_timeout(olmap_config* config, int seconds) {
    if (config != nullptr) config->config.endpointTimeoutSeconds = seconds;
}

olmap_status olmap_execute(const olmap_config* config, olmap_report** out_report) {
    if (out_report != nullptr) *out_report = nullptr;
    if (config == nullptr) {
        return failWith(OLMAP_USAGE_ERROR, "configuration handle is null");
    }
    try {
        olmap::engine::ExecutionReport report = olmap::engine::execute(config->config);
        if (out_report != nullptr) *out_report = new olmap_report{std::move(report)};
        g_lastError.clear();
        return OLMAP_OK;
    } catch (const olmap::engine::EngineError& error) {
        return failWith(statusOf(error.category()), error.what());
    } catch (const std::invalid_argument& error) {
        return failWith(OLMAP_USAGE_ERROR, error.what());
    } catch (const std::exception& error) {
        return failWith(OLMAP_OUTPUT_ERROR, std::string("internal error: ") + error.what());
    }
}

const char* olmap_last_error(void) { return g_lastError.c_str(); }

void olmap_report_free(olmap_report* report) { delete report; }

size_t olmap_report_data_map_count(const olmap_report* report) {
    return report == nullptr ? 0 : report->report.dataMaps.size();
}

const char* olmap_report_data_map_iri(const olmap_report* report, size_t index) {
    const auto* stats = statsAt(report, index);
    return stats == nullptr ? nullptr : stats->mapIri.c_str();
}

size_t olmap_report_rows(const olmap_report* report, size_t index) {
    const auto* stats = statsAt(report, index);
    return stats == nullptr ? 0 : stats->rowCount;
}

size_t olmap_report_containers_resolved(const olmap_report* report, size_t index) {
    const auto* stats = statsAt(report, index);
    return stats == nullptr ? 0 : stats->containerInstancesResolved;
}

size_t olmap_report_containers_created(const olmap_report* report, size_t index) {
    const auto* stats = statsAt(report, index);
    return stats == nullptr ? 0 : stats->containerNodesCreated;
}

size_t olmap_report_snippets_inserted(const olmap_report* report, size_t index) {
    const auto* stats = statsAt(report, index);
    return stats == nullptr ? 0 : stats->snippetsInserted;
}

size_t olmap_report_warning_count(const olmap_report* report) {
    return report == nullptr ? 0 : report->report.warnings.size();
}

const char* olmap_report_warning(const olmap_report* report, size_t index) {
    if (report == nullptr || index >= report->report.warnings.size()) return nullptr;
    return report->report.warnings[index].c_str();
}

size_t olmap_report_trace_count(const olmap_report* report) {
    return report == nullptr ? 0 : report->report.traces.size();
}

const char* olmap_report_trace(const olmap_report* report, size_t index) {
    if (report == nullptr || index >= report->report.traces.size()) return nullptr;
    return report->report.traces[index].c_str();
}

const char* olmap_report_document(const olmap_report* report) {
    return report == nullptr ? "" : report->report.documentText.c_str();
}

const char* olmap_version(void) { return "0.1.0"; }

}  // extern "C"
