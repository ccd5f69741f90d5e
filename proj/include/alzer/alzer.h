/*
 * alzer - a verification toolkit for Wirtinger/Alzer-type inequalities.
 *
 * C interface of the shared library. Every entry point returns an alz_errc
 * (ALZ_OK on success) and writes its result through out-parameters; handle
 * types are opaque and must be released with their matching free function.
 * On failure, alz_last_error() describes the problem for the calling
 * thread, and alz_last_error_offset() carries the byte offset of a parse
 * error (-1 otherwise).
 */

#ifndef ALZER_H
#define ALZER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ALZ_API __declspec(dllexport)
#else
#define ALZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum alz_errc {
    ALZ_OK = 0,
    ALZ_ERR_PARSE = 1,   /* syntax error or unknown identifier */
    ALZ_ERR_EVAL = 2,    /* domain error during evaluation */
    ALZ_ERR_DIFF = 3,    /* non-differentiable node */
    ALZ_ERR_QUAD = 4,    /* quadrature failure (depth cap, bad sample) */
    ALZ_ERR_RANGE = 5,   /* inversion target outside the range of f */
    ALZ_ERR_INVALID = 6, /* invalid argument */
    ALZ_ERR_CAP = 7,     /* simplification or rejection cap exceeded */
    ALZ_ERR_INTERNAL = 8
} alz_errc;

ALZ_API const char* alz_version(void);
ALZ_API const char* alz_errc_name(alz_errc code);
ALZ_API const char* alz_last_error(void);
ALZ_API long long alz_last_error_offset(void);

/* ---- expressions ------------------------------------------------------- */

typedef struct alz_expr alz_expr;

ALZ_API alz_errc alz_parse(const char* text, alz_expr** out);
ALZ_API void alz_expr_free(alz_expr* e);
ALZ_API alz_errc alz_expr_eval(const alz_expr* e, double x, double* out);
ALZ_API alz_errc alz_expr_diff(const alz_expr* e, int order, alz_expr** out);

/* Canonical fully parenthesized text; release with alz_string_free. */
ALZ_API alz_errc alz_expr_str(const alz_expr* e, char** out);
ALZ_API void alz_string_free(char* s);

/* ---- quadrature and norms ---------------------------------------------- */

/* Negative tolerances select the default (1e-10 absolute). */

typedef struct alz_quad_result {
    double value;
    double error_estimate;
    long long subdivisions;
} alz_quad_result;

typedef struct alz_sup_result {
    double max_value; /* signed max of f */
    double abs_max;   /* sup |f| */
    double argmax;
} alz_sup_result;

ALZ_API alz_errc alz_integrate(const alz_expr* e, double a, double b, double tol,
                               alz_quad_result* out);
ALZ_API alz_errc alz_sup_norm(const alz_expr* e, double a, double b, alz_sup_result* out);
ALZ_API alz_errc alz_mean_zero_shift(const alz_expr* e, double a, double b, double tol,
                                     alz_expr** out);

/* ---- inequality reports ------------------------------------------------- */

typedef struct alz_flag {
    int evaluated;
    int value;
    double witness;
} alz_flag;

typedef struct alz_hypotheses {
    alz_flag mean_zero;
    alz_flag convex;
    alz_flag increasing;
    alz_flag decreasing;
    alz_flag endpoint_product_positive;
    alz_flag endpoints_are_max;
    alz_flag periodic_match;
} alz_hypotheses;

typedef struct alz_ineq_report {
    char theorem_id[16];
    double a, b;
    double lhs;
    double rhs;
    double margin; /* rhs - lhs */
    double sharpness_ratio;
    int satisfied;
    int hypotheses_met;
    int sharp_confirmed;
    int used_abs_max;
    double t_rap;              /* thm6 only, NaN otherwise */
    double vanishing_residual; /* higher only, NaN otherwise */
    alz_hypotheses hypotheses;
    int quad_integrals;
    long long quad_subdivisions;
    double quad_error_sum;
    char note[160];
} alz_ineq_report;

/*
 * theorem_id: "thm1" (Wirtinger), "thm2" (Alzer), "thm3" (convex),
 * "thm4" (increasing), "cor1" (decreasing), "thm5" (endpoint max),
 * "thm6" (general), "higher" (2n-th order; n is read only here).
 * thm1/thm2 are pinned to [0, 2pi]; a and b are ignored for them.
 */
ALZ_API alz_errc alz_check(const char* theorem_id, const alz_expr* e, double a, double b, int n,
                           double tol, alz_ineq_report* out);

/* int_a^b (x-a)^n (b-x)^n f^(2n) dx */
ALZ_API alz_errc alz_vanishing_residual(const alz_expr* e, double a, double b, int n, double tol,
                                        double* out);

/* beta = B(2n+1, 2n+1), alpha = 12^n (b-a)^{-(n+1/2)} / sqrt(beta) */
ALZ_API alz_errc alz_higher_order_constants(int n, double a, double b, double* beta_out,
                                            double* alpha_out);

/* Audits thm2..thm6 with the built-in extremal; pass has_interval = 0 to
 * use each theorem's natural interval. */
ALZ_API alz_errc alz_audit_sharpness(const char* theorem_id, int has_interval, double a, double b,
                                     double tol, alz_ineq_report* out);

/* ---- applications ------------------------------------------------------- */

typedef struct alz_trap_bounds {
    double t_rap;
    double true_abs;
    double classic_bound;
    double m_constant;
    double new_bound;
    int classic_applicable;
    int new_applicable;
    char note[160];
} alz_trap_bounds;

ALZ_API alz_errc alz_trapezoid_bounds(const alz_expr* e, double a, double b, double tol,
                                      alz_trap_bounds* out);

ALZ_API alz_errc alz_geometric_mean_bound(const alz_expr* e, double a, double b, double tol,
                                          alz_ineq_report* out);

typedef struct alz_chain_report {
    double lambda;
    double left;
    double middle;
    double right;
    int link1_holds;
    int link2_holds;
    double alpha;
    double beta;
    int ordering_ok;
    alz_flag evidence;
    char note[240];
} alz_chain_report;

ALZ_API alz_errc alz_log_convex_chain(const alz_expr* e, double x, double y, double tol,
                                      alz_chain_report* out);
ALZ_API alz_errc alz_bijective_chain(const alz_expr* e, double a, double b, double x, double y,
                                     double lambda, double tol, alz_chain_report* out);
ALZ_API alz_errc alz_invert_monotone(const alz_expr* e, double a, double b, double v, double* out);

/* ---- corpus generation and mining --------------------------------------- */

typedef enum alz_family {
    ALZ_FAMILY_POLYNOMIAL = 0,
    ALZ_FAMILY_TRIG = 1,
    ALZ_FAMILY_EXP = 2
} alz_family;

enum {
    ALZ_HYP_CONVEX = 1 << 0,
    ALZ_HYP_INCREASING = 1 << 1,
    ALZ_HYP_DECREASING = 1 << 2,
    ALZ_HYP_MEAN_ZERO = 1 << 3,
    ALZ_HYP_ENDPOINT_MAX = 1 << 4,
    ALZ_HYP_POSITIVE_ENDPOINT_PRODUCT = 1 << 5
};

typedef struct alz_generator_spec {
    int family;           /* alz_family */
    double a, b;          /* generation interval */
    int degree_cap;       /* degree / harmonics / mixture terms */
    double coeff_lo, coeff_hi;
    unsigned hypotheses;  /* ALZ_HYP_* bitmask */
    uint64_t seed;
    int trials;
} alz_generator_spec;

typedef struct alz_corpus alz_corpus;

ALZ_API alz_errc alz_generate(const alz_generator_spec* spec, alz_corpus** out);
ALZ_API size_t alz_corpus_size(const alz_corpus* corpus);
ALZ_API alz_errc alz_corpus_expr(const alz_corpus* corpus, size_t index, alz_expr** out);
ALZ_API const char* alz_corpus_text(const alz_corpus* corpus, size_t index);
ALZ_API void alz_corpus_free(alz_corpus* corpus);

typedef struct alz_counterexample {
    char theorem_id[16];
    double a, b;
    double lhs;
    double rhs;
    double margin; /* negative */
    alz_hypotheses hypotheses;
    long long trial;
    uint64_t seed;
} alz_counterexample;

typedef struct alz_theorem_stat {
    char theorem_id[16];
    long long checked;
    long long violations;
    long long errors;
    double worst_ratio;
} alz_theorem_stat;

typedef struct alz_mine_result alz_mine_result;

ALZ_API alz_errc alz_mine(const alz_generator_spec* spec, const char* const* theorems,
                          size_t n_theorems, int n_order, double tol, alz_mine_result** out);
ALZ_API size_t alz_mine_count(const alz_mine_result* res);
ALZ_API alz_errc alz_mine_record(const alz_mine_result* res, size_t index,
                                 alz_counterexample* out);
/* Printed function of one record; owned by the result handle. */
ALZ_API const char* alz_mine_function(const alz_mine_result* res, size_t index);
ALZ_API size_t alz_mine_stat_count(const alz_mine_result* res);
ALZ_API alz_errc alz_mine_stat(const alz_mine_result* res, size_t index, alz_theorem_stat* out);
ALZ_API void alz_mine_free(alz_mine_result* res);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ALZER_H */
