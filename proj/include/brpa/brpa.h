#ifndef BRPA_BRPA_H_
#define BRPA_BRPA_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum brpa_status {
  BRPA_OK = 0,
  BRPA_INVALID_ARGUMENT = 1,
  BRPA_UNSUPPORTED_METHOD = 2,
  BRPA_RESOURCE_LIMIT = 3,
  BRPA_CONFIG_ERROR = 4,
  BRPA_IO_ERROR = 5,
  BRPA_TEST_FAILED = 6,
  BRPA_INTERNAL = 99
} brpa_status;

typedef enum brpa_method {
  BRPA_METHOD_SEQ = 0,
  BRPA_METHOD_UNIFORM = 1,
  BRPA_METHOD_MATCHING = 2,
  BRPA_METHOD_EXP = 3
} brpa_method;

typedef enum brpa_format {
  BRPA_FORMAT_CSV = 0,
  BRPA_FORMAT_JSON = 1
} brpa_format;

/* A sampled or loaded graph with its header (n, m, method, seed). Graphs
   from the exp method keep their latent process. */
typedef struct brpa_graph brpa_graph;

const char* brpa_version(void);
/* Message of the last failing call on this thread; "" if none. */
const char* brpa_last_error(void);
const char* brpa_status_string(brpa_status status);
/* Frees strings returned through char** outputs. */
void brpa_string_free(char* s);

brpa_status brpa_method_from_name(const char* name, brpa_method* out);

/* delta may be NULL; otherwise method must be SEQ and m = 1. */
brpa_status brpa_generate(uint32_t n, uint32_t m, brpa_method method,
                          uint64_t seed, const double* delta,
                          brpa_graph** out);
void brpa_graph_free(brpa_graph* g);
brpa_status brpa_graph_read(const char* path, brpa_graph** out);
brpa_status brpa_graph_write(const brpa_graph* g, const char* path);

uint32_t brpa_graph_n(const brpa_graph* g);
uint32_t brpa_graph_m(const brpa_graph* g);
/* Number of distinct (a, b) classes, loops included. */
uint64_t brpa_graph_edge_classes(const brpa_graph* g);
brpa_status brpa_graph_degree(const brpa_graph* g, uint32_t v, uint64_t* out);
brpa_status brpa_graph_multiplicity(const brpa_graph* g, uint32_t a, uint32_t b,
                                    uint32_t* out);

/* Row n,m,method,seed,L_n,P_n,min_prefix_degree,l1_degree_stat,connected.
   l1_degree_stat is NA unless the exp process is available; for files from
   the exp method it is rebuilt from the recorded seed. */
brpa_status brpa_stats_report(const brpa_graph* g, double a, brpa_format format,
                              char** out);

/* JSON {roots, sizes, largest, scaled}; m = 1 only. root = 0 skips the
   scaled entry; mu = 0 skips the prefix check. */
brpa_status brpa_maxtree_report(const brpa_graph* g, uint32_t root, uint32_t mu,
                                char** out);

/* kind: example1|example2|example3|pairbound|connect|zsigma|mixture.
   params: "key=value,key=value" (may be NULL or empty). */
brpa_status brpa_bounds(const char* kind, const char* params, brpa_format format,
                        char** out);

/* Exact law of a statistic over all pairings; mn <= 9. */
brpa_status brpa_oracle(uint32_t n, uint32_t m, const char* statistic, uint32_t mu,
                        brpa_format format, char** out);

/* Runs a config, writes report.csv and report.json into out_dir. Returns
   BRPA_TEST_FAILED when any declared test fails; *tests_failed (if not
   NULL) receives the count. workers = 0 uses BRPA_WORKERS or 1. */
brpa_status brpa_mc_run(const char* config_path, const char* out_dir,
                        unsigned workers, int* tests_failed);

#ifdef __cplusplus
}
#endif

#endif /* BRPA_BRPA_H_ */
