#ifndef USC_H
#define USC_H

/* C interface to the ultrastrong-coupling spectrum toolkit. All energies are
 * linear frequencies in GHz. Functions return USC_OK or an error code; the
 * message of the last failure on the calling thread is available from
 * usc_last_error(). Handles are opaque and owned by the caller. */

#include <stddef.h>
#include <stdint.h>

#if defined(USC_BUILDING_LIBRARY)
#define USC_API __attribute__((visibility("default")))
#else
#define USC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum usc_status {
  USC_OK = 0,
  USC_ERR_INVALID_ARGUMENT = 1,
  USC_ERR_NON_HERMITIAN = 2,
  USC_ERR_NOT_CONVERGED = 3,
  USC_ERR_CONFIG = 4,
  USC_ERR_IO = 5,
  USC_ERR_INTERNAL = 6
} usc_status;

USC_API const char* usc_version(void);
USC_API const char* usc_last_error(void);
USC_API const char* usc_status_name(usc_status status);

/* Model: Dicke parameters plus sweep calibration, initialized to the fitted
 * device values. Keys: omega_r g1 g2 delta1 delta2 eps1 eps2 n_cut
 * a_crosstalk b_plus b_minus eps_coeff i_b0. */
typedef struct usc_model usc_model;

USC_API usc_status usc_model_create(usc_model** out);
USC_API void usc_model_destroy(usc_model* model);
USC_API usc_status usc_model_set(usc_model* model, const char* key, double value);
USC_API usc_status usc_model_get(const usc_model* model, const char* key, double* value);

USC_API usc_status usc_qubit_frequency(double eps, double delta, double* out);
USC_API usc_status usc_renormalized_gap(double delta, double g, double omega_r, double* out);

/* Lowest `count` eigenvalues of the flux-basis Hamiltonian at the model's
 * eps1 (crosstalk not applied). */
USC_API usc_status usc_model_energies(const usc_model* model, int count, double* energies);

/* Spectrum over an eps1 grid with crosstalk applied. */
typedef struct usc_spectrum usc_spectrum;

USC_API usc_status usc_sweep(const usc_model* model, const double* grid, size_t points,
                             int n_levels, int threads, usc_spectrum** out);
USC_API void usc_spectrum_destroy(usc_spectrum* spectrum);
USC_API usc_status usc_spectrum_shape(const usc_spectrum* spectrum, size_t* points,
                                      int* n_levels);
USC_API usc_status usc_spectrum_transition(const usc_spectrum* spectrum, size_t point, int i,
                                           int j, double* omega);

typedef struct usc_anticrossing {
  int found; /* 0 when the gap has no interior minimum in the window */
  double eps1_star;
  double gap_min;
  double half_splitting;
  double omega_lower;
  double omega_upper;
} usc_anticrossing;

USC_API usc_status usc_find_anticrossing(const usc_model* model, int lower, int upper, double lo,
                                         double hi, usc_anticrossing* out);

/* Config-driven commands: sweep, anticross, project, oracle, fit, quantize.
 * seed < 0 keeps the configured seed. */
typedef struct usc_run usc_run;

USC_API usc_status usc_run_command(const char* command, const char* config_path,
                                   const char* out_dir, int threads, int64_t seed,
                                   usc_run** out);
USC_API void usc_run_destroy(usc_run* run);
USC_API const char* usc_run_summary(const usc_run* run);
USC_API int usc_run_checks_passed(const usc_run* run);

#ifdef __cplusplus
}
#endif

#endif
