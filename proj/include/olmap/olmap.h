#ifndef OLMAP_H
#define OLMAP_H

/* C interface to the mapping engine. All functions are synchronous; handles
 * are opaque and must be freed with the matching _free function. Functions
 * returning a status code describe failures through olmap_last_error(),
 * which is kept per thread. Strings returned by accessors stay owned by the
 * handle they came from and are valid until it is freed. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct olmap_config olmap_config;
typedef struct olmap_report olmap_report;

/* Broad failure classes; the values double as process exit codes. */
typedef enum olmap_status {
    OLMAP_OK = 0,
    OLMAP_USAGE_ERROR = 1,
    OLMAP_MAPPING_ERROR = 2,
    OLMAP_SOURCE_ERROR = 3,
    OLMAP_OUTPUT_ERROR = 4
} olmap_status;

/* How snippet instantiations meet container nodes when the container
 * template carries variables: every row into every node, or each row only
 * into the nodes of its own instantiated container path. */
typedef enum olmap_pairing {
    OLMAP_PAIRING_CARTESIAN = 0,
    OLMAP_PAIRING_ROW = 1
} olmap_pairing;

/* A new run configuration. Either path may be NULL or empty here; execution
 * rejects configurations that still miss a required path. Never fails other
 * than by returning NULL on allocation failure. */
olmap_config* olmap_config_new(const char* mapping_path, const char* output_path);
void olmap_config_free(olmap_config* config);

void olmap_config_set_pretty(olmap_config* config, int enabled);
void olmap_config_set_pairing(olmap_config* config, olmap_pairing pairing);
/* Lenient substitution turns unbound variables into empty strings plus a
 * warning; the default is to fail the run. */
void olmap_config_set_lenient(olmap_config* config, int enabled);
/* A dry run builds the document and the report but writes no file. */
void olmap_config_set_dry_run(olmap_config* config, int enabled);
/* Collect one trace line per result row in the report. */
void olmap_config_set_trace(olmap_config* config, int enabled);
void olmap_config_set_vocabulary_namespace(olmap_config* config, const char* iri);
void olmap_config_set_endpoint_timeout(olmap_config* config, int seconds);

/* Runs the configuration. On success returns OLMAP_OK and, when out_report
 * is not NULL, stores a report there for the caller to free. On failure
 * returns the error's status, stores NULL, and sets olmap_last_error(). */
olmap_status olmap_execute(const olmap_config* config, olmap_report** out_report);

/* The message of the most recent failure on this thread; empty string when
 * the last call succeeded. The pointer stays valid until the next API call
 * on the same thread. */
const char* olmap_last_error(void);

void olmap_report_free(olmap_report* report);

/* Per-data-map statistics, indexed 0..count-1 in execution order. Accessors
 * return 0 or NULL for an index out of range. */
size_t olmap_report_data_map_count(const olmap_report* report);
const char* olmap_report_data_map_iri(const olmap_report* report, size_t index);
size_t olmap_report_rows(const olmap_report* report, size_t index);
size_t olmap_report_containers_resolved(const olmap_report* report, size_t index);
size_t olmap_report_containers_created(const olmap_report* report, size_t index);
size_t olmap_report_snippets_inserted(const olmap_report* report, size_t index);

size_t olmap_report_warning_count(const olmap_report* report);
const char* olmap_report_warning(const olmap_report* report, size_t index);
size_t olmap_report_trace_count(const olmap_report* report);
const char* olmap_report_trace(const olmap_report* report, size_t index);

/* The serialized output document, as written (or as it would be written on
 * a dry run); empty string when nothing was mapped into an empty document. */
const char* olmap_report_document(const olmap_report* report);

const char* olmap_version(void);

#ifdef __cplusplus
}
#endif

#endif /* OLMAP_H */
