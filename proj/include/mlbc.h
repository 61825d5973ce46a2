/* mlbc — ML-decoding error bounds for binary linear block codes.
 *
 * C interface to the mlbc core: opaque handles, status-code returns, and
 * a thread-local last-error message. All handle-returning calls allocate;
 * release with the matching *_free. Strings returned through char** are
 * malloc'd; release with mlbc_string_free.
 */
#ifndef MLBC_H
#define MLBC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mlbc_status {
    MLBC_OK = 0,
    MLBC_ERR_INVALID_ARGUMENT = 1,
    MLBC_ERR_PARSE = 2,
    MLBC_ERR_IO = 3,
    MLBC_ERR_SIZE_GUARD = 4,
    MLBC_ERR_NUMERIC = 5,
    MLBC_ERR_UNSUPPORTED = 6,
} mlbc_status;

typedef struct mlbc_code mlbc_code;
typedef struct mlbc_spectrum mlbc_spectrum;
typedef struct mlbc_iowef mlbc_iowef;
typedef struct mlbc_channel mlbc_channel;
typedef struct mlbc_events mlbc_events;
typedef struct mlbc_component mlbc_component;
typedef struct mlbc_ensemble mlbc_ensemble;

const char* mlbc_version(void);
/* Message describing the most recent failure on this thread. */
const char* mlbc_last_error(void);
void mlbc_string_free(char* s);

/* ---- linear codes -------------------------------------------------- */

mlbc_status mlbc_code_load(const char* path, mlbc_code** out);
mlbc_status mlbc_code_parse(const char* text, mlbc_code** out);
mlbc_status mlbc_code_store(const mlbc_code* code, const char* path);
void mlbc_code_free(mlbc_code* code);
size_t mlbc_code_n(const mlbc_code* code);
size_t mlbc_code_k(const mlbc_code* code);
double mlbc_code_rate(const mlbc_code* code);

/* ---- spectra and IOWEFs -------------------------------------------- */

mlbc_status mlbc_code_spectrum(const mlbc_code* code, mlbc_spectrum** out);
mlbc_status mlbc_code_iowef(const mlbc_code* code, mlbc_iowef** out);

mlbc_status mlbc_spectrum_load(const char* path, mlbc_spectrum** out);
mlbc_status mlbc_spectrum_store(const mlbc_spectrum* s, const char* path);
mlbc_status mlbc_spectrum_to_json(const mlbc_spectrum* s, char** out);
void mlbc_spectrum_free(mlbc_spectrum* s);
size_t mlbc_spectrum_n(const mlbc_spectrum* s);
size_t mlbc_spectrum_term_count(const mlbc_spectrum* s);
/* count may overflow a double for long ensembles; log_count never does. */
mlbc_status mlbc_spectrum_term(const mlbc_spectrum* s, size_t index, unsigned* d, double* count,
                               double* log_count);

mlbc_status mlbc_iowef_load(const char* path, mlbc_iowef** out);
mlbc_status mlbc_iowef_store(const mlbc_iowef* t, const char* path);
mlbc_status mlbc_iowef_to_json(const mlbc_iowef* t, char** out);
void mlbc_iowef_free(mlbc_iowef* t);
size_t mlbc_iowef_term_count(const mlbc_iowef* t);
mlbc_status mlbc_iowef_term(const mlbc_iowef* t, size_t index, unsigned* w, unsigned* j,
                            double* count, double* log_count);
mlbc_status mlbc_iowef_marginal_spectrum(const mlbc_iowef* t, mlbc_spectrum** out);

/* ---- channels ------------------------------------------------------ */

mlbc_status mlbc_channel_biawgn(double ebno_db, double rate, mlbc_channel** out);
mlbc_status mlbc_channel_bsc(double crossover, mlbc_channel** out);
void mlbc_channel_free(mlbc_channel* ch);
mlbc_status mlbc_bhattacharyya(const mlbc_channel* ch, double* out);
mlbc_status mlbc_pairwise_error(const mlbc_channel* ch, unsigned d, double* out);
mlbc_status mlbc_joint_pairwise_error(const mlbc_channel* ch, unsigned w_i, unsigned w_j,
                                      unsigned w_ij, double* out);

/* ---- scalar special functions -------------------------------------- */

double mlbc_q_function(double x);
mlbc_status mlbc_h2(double x, double* out);
mlbc_status mlbc_h2_inverse(double y, double* out);
mlbc_status mlbc_normalized_density(double rate, double delta, double* out);
mlbc_status mlbc_min_density(double rate, double t_min, double* out);
/* rate_normalized = 0 keeps the older Fano normalization (factor 1). */
mlbc_status mlbc_pb_lower_from_entropy(double h_norm, double rate, int rate_normalized,
                                       double* out);

/* ---- spectrum-based upper bounds ----------------------------------- */

/* Raw (unclipped) values are exp(log_value); clip at 1 when reporting. */
mlbc_status mlbc_union_bound(const mlbc_spectrum* s, const mlbc_channel* ch, double* log_value);
mlbc_status mlbc_bhattacharyya_bound(const mlbc_spectrum* s, const mlbc_channel* ch,
                                     double* log_value);
/* Geometric tail-extrapolation estimate of the truncated union-bound
 * mass; +inf when the trailing terms are not decaying. */
mlbc_status mlbc_union_tail_estimate(const mlbc_spectrum* s, const mlbc_channel* ch,
                                     double* log_tail);

/* Tilt families: 0 uniform (no parameters), 1 exp-llr (s),
 * 2 gaussian (c, e; BIAWGN only). */
mlbc_status mlbc_ds2_bound(const mlbc_spectrum* s, const mlbc_channel* ch, double lambda,
                           double rho, int tilt_family, const double* tilt_params,
                           size_t tilt_param_count, double* log_value);
/* Optimizes (lambda, rho, tilt); param_json receives the optimum, e.g.
 * {"lambda":..,"rho":..,"tilt_family":"gaussian","tilt":[c,e]}. */
mlbc_status mlbc_ds2_optimize(const mlbc_spectrum* s, const mlbc_channel* ch, int tilt_family,
                              uint64_t seed, double* log_value, char** param_json);
mlbc_status mlbc_ds2_bit_bound(const mlbc_iowef* t, const mlbc_channel* ch, double lambda,
                               double rho, int tilt_family, const double* tilt_params,
                               size_t tilt_param_count, double* log_value);
mlbc_status mlbc_ds2_bit_optimize(const mlbc_iowef* t, const mlbc_channel* ch, int tilt_family,
                                  uint64_t seed, double* log_value, char** param_json);

/* Pre-Jensen Gallager bound by exact BSC output enumeration. */
mlbc_status mlbc_gallager65_bound(const mlbc_code* code, double crossover, double lambda,
                                  double rho, double* log_value);
mlbc_status mlbc_gallager65_optimize(const mlbc_code* code, double crossover, double* log_value,
                                     char** param_json);

/* ---- geometric upper bounds (BIAWGN) -------------------------------- */

mlbc_status mlbc_sphere_bound(const mlbc_spectrum* s, const mlbc_channel* ch,
                              int optimize_center, double* value, char** param_json);
mlbc_status mlbc_sphere_bound_fixed(const mlbc_spectrum* s, const mlbc_channel* ch,
                                    double radius, double center_offset, int clip_inner,
                                    double* value);
mlbc_status mlbc_tsb_bound(const mlbc_spectrum* s, const mlbc_channel* ch, double* value,
                           char** param_json);
mlbc_status mlbc_tsb_bound_fixed(const mlbc_spectrum* s, const mlbc_channel* ch,
                                 double half_angle, int clip_inner, double* value);

/* Monte-Carlo reference for the region decomposition. Region kinds:
 * 0 whole space; 1 sphere (p1 radius, p2 axial center offset);
 * 2 cone (p1 half-angle). */
mlbc_status mlbc_region_bound_mc(const mlbc_code* code, const mlbc_channel* ch, int region_kind,
                                 double p1, double p2, uint64_t samples, uint64_t seed,
                                 unsigned workers, double* estimate, double* std_error);

/* ---- lower bounds --------------------------------------------------- */

mlbc_status mlbc_events_load(const char* path, mlbc_events** out);
mlbc_status mlbc_events_parse(const char* text, mlbc_events** out);
void mlbc_events_free(mlbc_events* sys);
mlbc_status mlbc_events_exact_union(const mlbc_events* sys, double* out);
mlbc_status mlbc_decaen_bound(const mlbc_events* sys, double* out);
/* weight_choice: 0 unit weights (de Caen), 1 the equality weights
 * 1/deg(x) (bound equals the exact union). */
mlbc_status mlbc_cohen_merhav_bound(const mlbc_events* sys, int weight_choice, double* out);

mlbc_status mlbc_ml_lower_bound(const mlbc_code* code, const mlbc_channel* ch, double tilt_a,
                                double* out);
mlbc_status mlbc_ml_lower_bound_optimized(const mlbc_code* code, const mlbc_channel* ch,
                                          double* value, double* tilt_a);

/* ---- oracles --------------------------------------------------------- */

mlbc_status mlbc_exact_ml_bsc(const mlbc_code* code, double crossover, double* out);
mlbc_status mlbc_mc_ml_awgn(const mlbc_code* code, const mlbc_channel* ch, uint64_t samples,
                            uint64_t seed, int bit_metric, unsigned workers, double* estimate,
                            double* std_error);

/* ---- convolutional components and turbo ensembles ------------------- */

mlbc_status mlbc_component_load(const char* path, mlbc_component** out);
mlbc_status mlbc_component_parse(const char* json_text, mlbc_component** out);
void mlbc_component_free(mlbc_component* c);
mlbc_status mlbc_conv_iowef(const mlbc_component* c, unsigned n_in, unsigned w_max,
                            unsigned j_max, mlbc_iowef** out, int* truncated,
                            int* empty_beyond_zero);
mlbc_status mlbc_uniform_interleaver_combine(const mlbc_iowef* a1, const mlbc_iowef* a2,
                                             unsigned n_interleaver, mlbc_iowef** out);
mlbc_status mlbc_permute_average_iowef(const mlbc_component* c1, const mlbc_component* c2,
                                       unsigned n_interleaver, mlbc_iowef** out);

mlbc_status mlbc_ensemble_load(const char* path, mlbc_ensemble** out);
mlbc_status mlbc_ensemble_parse(const char* json_text, mlbc_ensemble** out);
void mlbc_ensemble_free(mlbc_ensemble* e);
double mlbc_ensemble_rate(const mlbc_ensemble* e);
unsigned mlbc_ensemble_block_length(const mlbc_ensemble* e);
/* out_iowef and meta_json may be NULL when not wanted. meta_json carries
 * the assumption flags and truncated-mass accounting. */
mlbc_status mlbc_ensemble_spectrum(const mlbc_ensemble* e, unsigned w_max, unsigned d_max,
                                   mlbc_spectrum** out_spectrum, mlbc_iowef** out_iowef,
                                   char** meta_json);

#ifdef __cplusplus
}
#endif

#endif /* MLBC_H */
