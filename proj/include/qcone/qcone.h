#ifndef QCONE_QCONE_H
#define QCONE_QCONE_H

/* C interface to the quasicone engine. Handles are opaque; every call that
   can fail returns a qc_status and leaves a message in qc_last_error() for
   the calling thread. Strings returned through char** are owned by the
   caller and released with qc_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QC_API __declspec(dllexport)
#else
#define QC_API __attribute__((visibility("default")))
#endif

typedef enum qc_status {
    QC_OK = 0,
    QC_ERR_ARGUMENT = 1,  /* null handle, bad option */
    QC_ERR_PARSE = 2,     /* matrix, strategy or weight text did not parse */
    QC_ERR_INVALID = 3,   /* matrix violates the quasicone conditions */
    QC_ERR_STEP = 4,      /* engine refused a step, see qc_last_step_* */
    QC_ERR_IO = 5,
    QC_ERR_INTERNAL = 6
} qc_status;

/* fixpoint: full closure; none: pair sums lower the Cartan exponent only;
   literal: no closure at all (how the hand-solved listings were computed) */
typedef enum qc_closure { QC_CLOSURE_FIXPOINT = 0, QC_CLOSURE_NONE = 1, QC_CLOSURE_LITERAL = 2 } qc_closure;

typedef struct qc_matrix qc_matrix;
typedef struct qc_report qc_report;
typedef struct qc_server qc_server;

QC_API const char* qc_version(void);
QC_API const char* qc_last_error(void);
/* after QC_ERR_STEP: "StepAnnihilates", "DegenerateState", "InvalidPath" or "AutoUndefined" */
QC_API const char* qc_last_step_kind(void);
/* after QC_ERR_STEP: zero-based step index, or -1 when unknown */
QC_API int64_t qc_last_step_index(void);
QC_API void qc_string_free(char* s);

/* ---- matrices ---- */

/* JSON document or plain rows with '*' on the diagonal */
QC_API qc_status qc_matrix_parse(const char* text, qc_matrix** out);
QC_API qc_status qc_matrix_read_file(const char* path, qc_matrix** out);
QC_API void qc_matrix_free(qc_matrix* m);
QC_API qc_status qc_matrix_clone(const qc_matrix* m, qc_matrix** out);
QC_API int qc_matrix_rank(const qc_matrix* m);
QC_API int qc_matrix_equal(const qc_matrix* a, const qc_matrix* b);
/* canonical JSON document */
QC_API qc_status qc_matrix_serialize(const qc_matrix* m, char** out);
QC_API qc_status qc_matrix_to_text(const qc_matrix* m, char** out);
/* QC_ERR_INVALID with the first violation as the message */
QC_API qc_status qc_matrix_validate(const qc_matrix* m);
QC_API qc_status qc_matrix_defect(const qc_matrix* m, int64_t* out);
/* JSON: defect, gap, valid, normal, gvm_complete, degenerate, violations */
QC_API qc_status qc_matrix_describe(const qc_matrix* m, char** out);
QC_API qc_status qc_matrix_normalize(const qc_matrix* m, qc_matrix** out);

/* ---- enumeration ---- */

/* return nonzero to continue */
typedef int (*qc_matrix_sink)(const qc_matrix* m, void* user);
QC_API qc_status qc_enumerate(int rank, int bound, int raw, qc_matrix_sink sink, void* user, uint64_t* count);

/* ---- strategies ---- */

/* "-1d", "0", ... */
QC_API qc_status qc_parse_start_weight(const char* text, int64_t* delta);
/* canonical form of a strategy string */
QC_API qc_status qc_strategy_normalize(const char* text, char** out);
/* Runs the strategy from offset start_delta*delta. out_state (optional) gets
   the JSON state document, out_matrix (optional) the final matrix. */
QC_API qc_status qc_apply(const qc_matrix* m, const char* strategy, int64_t start_delta, qc_closure closure,
                          char** out_state, qc_matrix** out_matrix);

/* ---- search ---- */

typedef struct qc_search_config {
    int rank;
    int bound;
    const char* tiers; /* comma list, NULL for all four */
    uint32_t max_rounds;
    int64_t start_delta;
    unsigned threads;  /* 0 = hardware concurrency */
} qc_search_config;

QC_API void qc_search_config_init(qc_search_config* cfg);
QC_API qc_status qc_search(const qc_search_config* cfg, qc_report** out);
QC_API void qc_report_free(qc_report* r);
QC_API size_t qc_report_total(const qc_report* r);
QC_API size_t qc_report_tier_count(const qc_report* r);
QC_API qc_status qc_report_tier(const qc_report* r, size_t i, const char** name, size_t* unsolved_after);
QC_API size_t qc_report_residual_count(const qc_report* r);
QC_API qc_status qc_report_residual(const qc_report* r, size_t i, qc_matrix** out);
/* every solved node's witness replays */
QC_API qc_status qc_report_verify_witnesses(const qc_report* r, size_t* failures);
/* full != 0 lists every node */
QC_API qc_status qc_report_serialize(const qc_report* r, int full, char** out);

/* ---- reference checks ---- */

/* JSON check of one table row; fallback_bound <= 0 means rank + 2 */
QC_API qc_status qc_verify_table(int rank, int max_scan_bound, int fallback_bound, unsigned threads, char** out,
                                 int* pass);
/* JSON list of the eight manual cases; *passed counts passing cases */
QC_API qc_status qc_verify_manual(char** out, int* passed, int* total);

/* ---- HTTP service ---- */

/* port 0 picks a free port, written to *bound_port */
QC_API qc_status qc_server_start(const char* host, int port, qc_server** out, int* bound_port);
QC_API void qc_server_stop(qc_server* s);
/* blocking */
QC_API qc_status qc_serve(const char* host, int port);

#ifdef __cplusplus
}
#endif

#endif
