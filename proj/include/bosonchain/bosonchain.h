/* C interface to the bosonchain core. All handles are opaque; every call that
 * can fail returns a bc_status and leaves a thread-local message readable with
 * bc_last_error(). Mode indices are 1-based here, as in the physics notation. */
#ifndef BOSONCHAIN_H
#define BOSONCHAIN_H

#include <stddef.h>

#if defined(BOSONCHAIN_BUILDING)
#define BC_API __attribute__((visibility("default")))
#else
#define BC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
  BC_OK = 0,
  BC_ERR_INVALID_ARGUMENT = 1,
  BC_ERR_CONFIG = 2,
  BC_ERR_UNSTABLE_REGIME = 3, /* Sigma_j <= 0 */
  BC_ERR_UNSTABLE = 4,        /* no steady state */
  BC_ERR_NOT_TOPOLOGICAL = 5,
  BC_ERR_WRONG_PHASE = 6,
  BC_ERR_ANALYTIC_UNSUPPORTED = 7,
  BC_ERR_UNPHYSICAL = 8,
  BC_ERR_DOMAIN = 9,
  BC_ERR_IO = 10,
  BC_ERR_BUFFER_TOO_SMALL = 11,
  BC_ERR_INTERNAL = 12
} bc_status;

typedef enum bc_phase { BC_PHASE_TRIVIAL = 0, BC_PHASE_TOPOLOGICAL, BC_PHASE_BOUNDARY, BC_PHASE_UNSTABLE } bc_phase;
typedef enum bc_frame { BC_FRAME_ORIGINAL = 0, BC_FRAME_SQUEEZED = 1 } bc_frame;
typedef enum bc_method {
  BC_METHOD_EXACT_SUM = 0,
  BC_METHOD_TRIVIAL,
  BC_METHOD_TOPO,
  BC_METHOD_EDGE,
  BC_METHOD_TWO_MODE
} bc_method;

typedef struct bc_params bc_params;
typedef struct bc_moments bc_moments;
typedef struct bc_sweep bc_sweep;

typedef struct bc_entanglement {
  double K1;
  double K2_re;
  double K2_im;
  double K3;
  double eta_minus;
  double E_N;
} bc_entanglement;

BC_API const char* bc_version(void);
BC_API const char* bc_last_error(void);
BC_API const char* bc_status_name(bc_status s);

/* Copies a NUL-terminated string into buf when it fits; *len (optional) gets the
 * length without the terminator. BC_ERR_BUFFER_TOO_SMALL otherwise. */

/* ---- parameters ---- */
BC_API bc_status bc_params_from_json(const char* json, bc_params** out);
BC_API bc_status bc_params_create(double t1, double delta1, double q_t, double q_delta, double phi_t,
                                  double phi_delta, int n_cells, double kappa, double n_th, double mu,
                                  bc_params** out);
BC_API bc_status bc_params_clone(const bc_params* p, bc_params** out);
BC_API void bc_params_destroy(bc_params* p);
BC_API bc_status bc_params_to_json(const bc_params* p, char* buf, size_t cap, size_t* len);
BC_API int bc_params_n_modes(const bc_params* p);
/* *ok = 1 when valid; violations are joined with "; " into buf (may be NULL when cap = 0). */
BC_API bc_status bc_params_validate(const bc_params* p, int* ok, int* analytic_restricted, char* buf, size_t cap,
                                    size_t* len);
BC_API bc_status bc_sigma_invariants(const bc_params* p, double out[3]);
BC_API bc_status bc_effective_couplings(const bc_params* p, double* t1p, double* t2p);
/* r: n_modes entries; scalars optional. */
BC_API bc_status bc_squeeze_transform(const bc_params* p, double* r_a, double* r_b, double* r_0, double* r,
                                      size_t cap);

/* ---- band theory ---- */
BC_API bc_status bc_classify_phase(const bc_params* p, double tol, bc_phase* phase, int* skin_effect);
BC_API bc_status bc_band_edges(const bc_params* p, double* xi2_min, double* xi2_max);
BC_API bc_status bc_bloch_spectrum(const bc_params* p, double k, double re_xi2[4], double im_xi2[4]);
/* beta: 8 doubles (re, im) x 4 roots, pairs (0,1) and (2,3). */
BC_API bc_status bc_beta_roots(const bc_params* p, double re_xi2, double im_xi2, double beta[8], int* degenerate);
BC_API bc_status bc_gbz_spectrum(const bc_params* p, int n_samples, double* xi, double* abs_beta_pair1,
                                 double* abs_beta_pair2);

/* ---- open chain ---- */
/* re, im: 4N entries each, sorted by (Re, Im). */
BC_API bc_status bc_bdg_eigenvalues(const bc_params* p, double* re, double* im, size_t cap);
BC_API bc_status bc_assess_stability(const bc_params* p, int* stable, double* spectral_abscissa);
/* Edge data: delta, epsilon, l, L1, L2, overlap. */
BC_API bc_status bc_edge_modes(const bc_params* p, double out[6]);
/* lambdas: 2N ascending eigenvalues of the SSH coupling matrix. */
BC_API bc_status bc_ssh_eigenvalues(const bc_params* p, double* lambdas, size_t cap);

/* ---- moments ---- */
BC_API bc_status bc_steady_moments(const bc_params* p, bc_moments** out, double* spectral_abscissa);
BC_API bc_status bc_analytic_moments(const bc_params* p, bc_method method, bc_moments** out);
BC_API bc_status bc_vacuum_moments(int n_modes, bc_moments** out);
BC_API bc_status bc_evolve_moments(const bc_params* p, const bc_moments* initial, double t, bc_moments** out);
BC_API bc_status bc_change_frame(const bc_params* p, const bc_moments* s, bc_frame to, bc_moments** out);
BC_API void bc_moments_destroy(bc_moments* s);
BC_API int bc_moments_n_modes(const bc_moments* s);
BC_API bc_frame bc_moments_frame(const bc_moments* s);
/* F = <a_m^dag a_mp>, G = <a_m a_mp>, each as (re, im). */
BC_API bc_status bc_moments_get(const bc_moments* s, int m, int mp, double F[2], double G[2]);
/* out: (2 n)^2 row-major for the n listed modes, interleaved (x, p). */
BC_API bc_status bc_quadrature_covariance(const bc_moments* s, const int* modes, int n, double* out, size_t cap);

/* ---- entanglement ---- */
BC_API bc_status bc_pair_report(const bc_moments* s, int m, int mp, bc_entanglement* out);
BC_API bc_status bc_logneg_symmetric(double K1, double K2, double K3, bc_entanglement* out);
BC_API bc_status bc_logneg_general(const double v[16], bc_entanglement* out);
BC_API bc_status bc_squeezing_degree(const bc_moments* s, int m, double* r_eff, double* theta);

/* ---- sweeps ---- */
BC_API bc_status bc_sweep_run_json(const char* spec_json, int workers, bc_sweep** out);
/* Preset names, one per line. */
BC_API bc_status bc_preset_names(char* buf, size_t cap, size_t* len);
BC_API bc_status bc_preset_spec_json(const char* name, char* buf, size_t cap, size_t* len);
/* Preset metadata: range_assumed, analytic_companion (either may be NULL), notes into buf. */
BC_API bc_status bc_preset_info(const char* name, int* range_assumed, int* analytic_companion, char* buf,
                                size_t cap, size_t* len);
BC_API size_t bc_sweep_size(const bc_sweep* s);
BC_API size_t bc_sweep_count_status(const bc_sweep* s, const char* status);
BC_API bc_status bc_sweep_write_csv(const bc_sweep* s, const char* path);
BC_API bc_status bc_sweep_csv(const bc_sweep* s, char* buf, size_t cap, size_t* len);
BC_API bc_status bc_sweep_write_plot(const bc_sweep* s, const char* path, const char* csv_path, int phase_overlay);
BC_API void bc_sweep_destroy(bc_sweep* s);

#ifdef __cplusplus
}
#endif

#endif
