#include "usc.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "usc/commands.hpp"
#include "usc/error.hpp"
#include "usc/spectrum.hpp"

struct usc_model {
  usc::spectrum::ModelPoint point = usc::spectrum::table_one();
};

struct usc_spectrum {
  usc::spectrum::SpectrumTable table;
};

struct usc_run {
  usc::commands::RunResult result;
};

namespace {

thread_local std::string last_error;

usc_status to_status(usc::ErrorCode code) {
  switch (code) {
    case usc::ErrorCode::invalid_argument: return USC_ERR_INVALID_ARGUMENT;
    case usc::ErrorCode::non_hermitian: return USC_ERR_NON_HERMITIAN;
    case usc::ErrorCode::not_converged: return USC_ERR_NOT_CONVERGED;
    case usc::ErrorCode::config: return USC_ERR_CONFIG;
    case usc::ErrorCode::io: return USC_ERR_IO;
  }
  return USC_ERR_INTERNAL;
}

usc_status set_error(usc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
usc_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return USC_OK;
  } catch (const usc::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(USC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(USC_ERR_INTERNAL, e.what());
  }
}

double* field(usc_model* m, const char* key) {
  auto& p = m->point;
  const std::string k = key ? key : "";
  if (k == "omega_r") return &p.model.omega_r;
  if (k == "g1") return &p.model.g1;
  if (k == "g2") return &p.model.g2;
  if (k == "delta1") return &p.model.delta1;
  if (k == "delta2") return &p.model.delta2;
  if (k == "eps1") return &p.model.eps1;
  if (k == "eps2") return &p.model.eps2;
  if (k == "a_crosstalk") return &p.calibration.a_crosstalk;
  if (k == "b_plus") return &p.calibration.b_plus;
  if (k == "b_minus") return &p.calibration.b_minus;
  if (k == "eps_coeff") return &p.calibration.eps_coeff;
  if (k == "i_b0") return &p.calibration.i_b0;
  return nullptr;
}

}  // namespace

extern "C" {

const char* usc_version(void) { return "1.0.0"; }

const char* usc_last_error(void) { return last_error.c_str(); }

const char* usc_status_name(usc_status status) {
  switch (status) {
    case USC_OK: return "ok";
    case USC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case USC_ERR_NON_HERMITIAN: return "non-Hermitian matrix";
    case USC_ERR_NOT_CONVERGED: return "not converged";
    case USC_ERR_CONFIG: return "configuration error";
    case USC_ERR_IO: return "i/o error";
    case USC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

usc_status usc_model_create(usc_model** out) {
  if (!out) return set_error(USC_ERR_INVALID_ARGUMENT, "usc_model_create: null output");
  return guarded([&] { *out = new usc_model(); });
}

void usc_model_destroy(usc_model* model) { delete model; }

usc_status usc_model_set(usc_model* model, const char* key, double value) {
  if (!model) return set_error(USC_ERR_INVALID_ARGUMENT, "usc_model_set: null model");
  if (key && std::strcmp(key, "n_cut") == 0) {
    if (!(value >= 2 && value <= 4096) || value != static_cast<double>(static_cast<int>(value)))
      return set_error(USC_ERR_INVALID_ARGUMENT, "usc_model_set: n_cut must be an integer >= 2");
    model->point.model.n_cut = static_cast<int>(value);
    return USC_OK;
  }
  double* f = field(model, key);
  if (!f)
    return set_error(USC_ERR_INVALID_ARGUMENT,
                     std::string("usc_model_set: unknown key '") + (key ? key : "") + "'");
  *f = value;
  return USC_OK;
}

usc_status usc_model_get(const usc_model* model, const char* key, double* value) {
  if (!model || !value) return set_error(USC_ERR_INVALID_ARGUMENT, "usc_model_get: null argument");
  if (key && std::strcmp(key, "n_cut") == 0) {
    *value = model->point.model.n_cut;
    return USC_OK;
  }
  const double* f = field(const_cast<usc_model*>(model), key);
  if (!f)
    return set_error(USC_ERR_INVALID_ARGUMENT,
                     std::string("usc_model_get: unknown key '") + (key ? key : "") + "'");
  *value = *f;
  return USC_OK;
}

usc_status usc_qubit_frequency(double eps, double delta, double* out) {
  if (!out) return set_error(USC_ERR_INVALID_ARGUMENT, "usc_qubit_frequency: null output");
  return guarded([&] { *out = usc::dicke::qubit_frequency(eps, delta); });
}

usc_status usc_renormalized_gap(double delta, double g, double omega_r, double* out) {
  if (!out) return set_error(USC_ERR_INVALID_ARGUMENT, "usc_renormalized_gap: null output");
  return guarded([&] { *out = usc::dicke::renormalized_gap(delta, g, omega_r); });
}

usc_status usc_model_energies(const usc_model* model, int count, double* energies) {
  if (!model || !energies)
    return set_error(USC_ERR_INVALID_ARGUMENT, "usc_model_energies: null argument");
  return guarded([&] {
    if (count < 1 || count > model->point.model.dimension())
      usc::fail(usc::ErrorCode::invalid_argument, "usc_model_energies: count out of range");
    const auto e = usc::dicke::flux_energies(model->point.model, count);
    for (int i = 0; i < count; ++i) energies[i] = e[i];
  });
}

usc_status usc_sweep(const usc_model* model, const double* grid, size_t points, int n_levels,
                     int threads, usc_spectrum** out) {
  if (!model || !grid || !out) return set_error(USC_ERR_INVALID_ARGUMENT, "usc_sweep: null argument");
  return guarded([&] {
    auto s = std::make_unique<usc_spectrum>();
    s->table = usc::spectrum::sweep(model->point.model, model->point.calibration,
                                    std::span<const double>(grid, points),
                                    {.n_levels = n_levels, .threads = threads});
    *out = s.release();
  });
}

void usc_spectrum_destroy(usc_spectrum* spectrum) { delete spectrum; }

usc_status usc_spectrum_shape(const usc_spectrum* spectrum, size_t* points, int* n_levels) {
  if (!spectrum || !points || !n_levels)
    return set_error(USC_ERR_INVALID_ARGUMENT, "usc_spectrum_shape: null argument");
  *points = spectrum->table.points.size();
  *n_levels = spectrum->table.n_levels;
  return USC_OK;
}

usc_status usc_spectrum_transition(const usc_spectrum* spectrum, size_t point, int i, int j,
                                   double* omega) {
  if (!spectrum || !omega)
    return set_error(USC_ERR_INVALID_ARGUMENT, "usc_spectrum_transition: null argument");
  if (point >= spectrum->table.points.size())
    return set_error(USC_ERR_INVALID_ARGUMENT, "usc_spectrum_transition: point out of range");
  return guarded([&] { *omega = spectrum->table.transition(point, i, j); });
}

usc_status usc_find_anticrossing(const usc_model* model, int lower, int upper, double lo,
                                 double hi, usc_anticrossing* out) {
  if (!model || !out)
    return set_error(USC_ERR_INVALID_ARGUMENT, "usc_find_anticrossing: null argument");
  return guarded([&] {
    const auto r = usc::spectrum::find_anticrossing(model->point.model, model->point.calibration,
                                                    lower, upper, lo, hi);
    *out = usc_anticrossing{};
    if (!r.crossing) return;
    out->found = 1;
    out->eps1_star = r.crossing->eps1_star;
    out->gap_min = r.crossing->gap_min;
    out->half_splitting = r.crossing->half_splitting;
    out->omega_lower = r.crossing->omega_lower;
    out->omega_upper = r.crossing->omega_upper;
  });
}

usc_status usc_run_command(const char* command, const char* config_path, const char* out_dir,
                           int threads, int64_t seed, usc_run** out) {
  if (!command || !config_path || !out)
    return set_error(USC_ERR_INVALID_ARGUMENT, "usc_run_command: null argument");
  return guarded([&] {
    usc::commands::RunOptions opts;
    opts.out_dir = out_dir && *out_dir ? out_dir : ".";
    opts.threads = threads;
    if (seed >= 0) opts.seed = seed;
    auto run = std::make_unique<usc_run>();
    run->result = usc::commands::run_file(command, config_path, opts);
    *out = run.release();
  });
}

void usc_run_destroy(usc_run* run) { delete run; }

const char* usc_run_summary(const usc_run* run) { return run ? run->result.summary.c_str() : ""; }

int usc_run_checks_passed(const usc_run* run) { return run && run->result.checks_passed ? 1 : 0; }

}  // extern "C"
