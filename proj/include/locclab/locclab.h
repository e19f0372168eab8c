/*
 * locclab C API.
 *
 * Opaque handles wrap ensembles, UPB candidates and reports. Every call that
 * can fail returns a locc_status; on failure locc_last_error() describes the
 * problem (thread-local, valid until the next failing call on that thread).
 * Handles returned through out-parameters are owned by the caller and must be
 * released with the matching *_free function. Status values double as the
 * command-line exit codes.
 */
#ifndef LOCCLAB_H
#define LOCCLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LOCCLAB_BUILDING)
#    define LOCC_API __declspec(dllexport)
#  else
#    define LOCC_API __declspec(dllimport)
#  endif
#else
#  define LOCC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum locc_status {
    LOCC_OK = 0,
    LOCC_ERR_INTERNAL = 1,
    LOCC_ERR_VALIDATION = 2,
    LOCC_ERR_NONCONVERGENCE = 3,
    LOCC_ERR_ARGUMENT = 4
} locc_status;

typedef enum locc_format { LOCC_FORMAT_JSON = 0, LOCC_FORMAT_CSV = 1 } locc_format;

typedef enum locc_rho_kind {
    LOCC_RHO_MAXIMALLY_MIXED_COMPLEMENT = 0,
    LOCC_RHO_RANDOM_RANK = 1,
    LOCC_RHO_PURE_IN_COMPLEMENT = 2
} locc_rho_kind;

typedef struct locc_config {
    uint64_t seed;
    int trials;
    int restarts;
    int max_iters;
    double success_gap; /* overlap >= 1 - success_gap means "product state found" */
    int max_copies;
    int allow_large; /* permit 3-copy constructions */
    int format;      /* locc_format */
    int timestamp;   /* nonzero: reports carry "generated_at" */
} locc_config;

typedef struct locc_ensemble locc_ensemble;
typedef struct locc_upb locc_upb;
typedef struct locc_report locc_report;

LOCC_API void locc_config_default(locc_config* cfg);
LOCC_API const char* locc_last_error(void);
LOCC_API const char* locc_version(void);

/* Ensembles (see the README for the file format). */
LOCC_API locc_status locc_ensemble_from_json(const char* text, locc_ensemble** out);
LOCC_API locc_status locc_ensemble_load(const char* path, locc_ensemble** out);
LOCC_API locc_status locc_ensemble_save(const locc_ensemble* e, const char* path);
LOCC_API locc_status locc_ensemble_to_json(const locc_ensemble* e, locc_report** out);
LOCC_API int locc_ensemble_size(const locc_ensemble* e);
LOCC_API int locc_ensemble_is_pure(const locc_ensemble* e);
LOCC_API int locc_ensemble_total_dim(const locc_ensemble* e);
LOCC_API void locc_ensemble_free(locc_ensemble* e);

/* UPB candidates. */
LOCC_API locc_status locc_upb_tiles(locc_upb** out);
LOCC_API locc_status locc_upb_from_json(const char* text, locc_upb** out);
LOCC_API locc_status locc_upb_load(const char* path, locc_upb** out);
LOCC_API locc_status locc_upb_save(const locc_upb* u, const char* path);
LOCC_API int locc_upb_size(const locc_upb* u);
LOCC_API void locc_upb_free(locc_upb* u);
LOCC_API locc_status locc_upb_tensor(const locc_upb* x, const locc_upb* y, locc_upb** out);
LOCC_API locc_status locc_upb_verify(const locc_upb* u, const locc_config* cfg, locc_report** out);
LOCC_API locc_status locc_make_sigma_rho(const locc_upb* u, locc_rho_kind kind, int rank, uint64_t rho_seed,
                                         int copies, int allow_large, locc_ensemble** out);

/* Scenarios. true_index < 0 draws the true state uniformly per trial. */
LOCC_API locc_status locc_distinguish(const locc_ensemble* e, int true_index, const locc_config* cfg,
                                      locc_report** out);
LOCC_API locc_status locc_classify(const locc_ensemble* e, const locc_config* cfg, locc_report** out);

/* Best <a(x)b|P|a(x)b> over product states. `p` holds (dim_a*dim_b)^2
 * interleaved re/im pairs, row-major. a_out / b_out, when non-null, receive
 * 2*dim_a / 2*dim_b doubles. */
LOCC_API locc_status locc_max_product_overlap(const double* p, int dim_a, int dim_b, const locc_config* cfg,
                                              double* value_out, double* a_out, double* b_out);

/* Reports. locc_report_outcome is LOCC_OK or LOCC_ERR_NONCONVERGENCE when
 * the run finished but its numerical evidence is inconclusive. */
LOCC_API const char* locc_report_text(const locc_report* r);
LOCC_API int locc_report_outcome(const locc_report* r);
LOCC_API void locc_report_free(locc_report* r);

#ifdef __cplusplus
}
#endif

#endif /* LOCCLAB_H */
