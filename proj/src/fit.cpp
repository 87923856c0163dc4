#include "usc/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "usc/csv.hpp"
#include "usc/error.hpp"
#include "usc/parallel.hpp"

namespace usc::fit {

namespace {

constexpr double kPenalty = 1e3;  // GHz, added per unit of normalized bound violation

struct Unique {
  std::vector<double> xs;
  std::vector<std::size_t> slot;  // record -> index into xs
};

Unique unique_abscissae(const PeakData& data) {
  Unique u;
  u.xs.reserve(data.records.size());
  for (const auto& r : data.records) u.xs.push_back(r.x);
  std::sort(u.xs.begin(), u.xs.end());
  u.xs.erase(std::unique(u.xs.begin(), u.xs.end()), u.xs.end());
  for (const auto& r : data.records)
    u.slot.push_back(std::size_t(std::lower_bound(u.xs.begin(), u.xs.end(), r.x) - u.xs.begin()));
  return u;
}

int highest_level(const LineSet& lines) {
  int top = 0;
  for (auto [i, j] : lines) {
    if (i < 0 || j < 0 || i == j)
      fail(ErrorCode::invalid_argument, "fit: a line needs two distinct non-negative levels");
    top = std::max({top, i, j});
  }
  return top;
}

// Model line frequencies at every distinct abscissa.
std::vector<std::vector<double>> model_lines(const ModelPoint& params, const Unique& u,
                                             Abscissa abscissa, const LineSet& lines,
                                             int threads) {
  const int count = highest_level(lines) + 1;
  std::vector<std::vector<double>> out(u.xs.size());
  parallel_for(u.xs.size(), threads, [&](std::size_t k) {
    const double eps1 = abscissa == Abscissa::bias_ma
                            ? spectrum::bias_to_epsilon(u.xs[k], params.calibration)
                            : u.xs[k];
    const RVector e =
        dicke::flux_energies(spectrum::apply_crosstalk(params.model, eps1, params.calibration), count);
    out[k].reserve(lines.size());
    for (auto [i, j] : lines) out[k].push_back(e[j] - e[i]);
  });
  return out;
}

double rms_from(const std::vector<std::vector<double>>& model, const Unique& u,
                const PeakData& data) {
  double sum = 0.0, weights = 0.0;
  for (std::size_t r = 0; r < data.records.size(); ++r) {
    const auto& rec = data.records[r];
    double best = std::numeric_limits<double>::infinity();
    for (double line : model[u.slot[r]]) best = std::min(best, std::abs(rec.omega - line));
    sum += rec.weight * best * best;
    weights += rec.weight;
  }
  if (!(weights > 0)) fail(ErrorCode::invalid_argument, "residual: total weight must be positive");
  return std::sqrt(sum / weights);
}

// Normalized step for each parameter.
Vector11 step_scales(const Vector11& p) {
  Vector11 s{};
  const double eps_coeff = std::max(std::abs(p[6]), 1e-6);
  const double floors[kParameterCount] = {0.05, 0.05, 0.05, 0.05, 0.05, 0.05,
                                          1.0,  0.05 / eps_coeff, 1e-3, 1e-4, 1e-4};
  for (int i = 0; i < kParameterCount; ++i) s[i] = std::max(0.05 * std::abs(p[i]), floors[i]);
  return s;
}

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

struct Minimizer {
  std::function<double(const std::vector<double>&)> objective;
  int budget = 0;
  int used = 0;
  std::vector<double>* trace = nullptr;

  double eval(const std::vector<double>& z) {
    ++used;
    return objective(z);
  }

  // Nelder-Mead with dimension-adapted coefficients. Returns true when the
  // tolerances were met before the budget ran out.
  bool run(std::vector<double>& best, double& f_best, double step, double f_tol, double x_tol) {
    const std::size_t n = best.size();
    const double nd = double(n);
    const double reflect = 1.0, expand = 1.0 + 2.0 / nd, contract = 0.75 - 0.5 / nd,
                 shrink = 1.0 - 1.0 / nd;
    Simplex s;
    s.x.push_back(best);
    s.f.push_back(f_best);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = best;
      v[i] += step;
      s.x.push_back(v);
      s.f.push_back(eval(v));
    }
    std::vector<std::size_t> order(n + 1);
    auto sort = [&] {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    };
    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
      return out;
    };

    while (true) {
      sort();
      const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
      if (trace) trace->push_back(s.f[lo]);
      double size = 0.0;
      for (std::size_t k = 0; k <= n; ++k)
        for (std::size_t i = 0; i < n; ++i) size = std::max(size, std::abs(s.x[k][i] - s.x[lo][i]));
      if (s.f[hi] - s.f[lo] <= f_tol && size <= x_tol) {
        best = s.x[lo];
        f_best = s.f[lo];
        return true;
      }
      if (used >= budget) {
        best = s.x[lo];
        f_best = s.f[lo];
        return false;
      }

      std::vector<double> c(n, 0.0);
      for (std::size_t k = 0; k <= n; ++k)
        if (k != hi)
          for (std::size_t i = 0; i < n; ++i) c[i] += s.x[k][i] / nd;

      const auto xr = blend(c, s.x[hi], -reflect);
      const double fr = eval(xr);
      if (fr < s.f[lo]) {
        const auto xe = blend(c, s.x[hi], -reflect * expand);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[hi] = xe;
          s.f[hi] = fe;
        } else {
          s.x[hi] = xr;
          s.f[hi] = fr;
        }
        continue;
      }
      if (fr < s.f[second]) {
        s.x[hi] = xr;
        s.f[hi] = fr;
        continue;
      }
      const bool outside = fr < s.f[hi];
      const auto xc = outside ? blend(c, xr, contract) : blend(c, s.x[hi], contract);
      const double fc = eval(xc);
      if (fc < (outside ? fr : s.f[hi])) {
        s.x[hi] = xc;
        s.f[hi] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == lo) continue;
        s.x[k] = blend(s.x[lo], s.x[k], shrink);
        s.f[k] = eval(s.x[k]);
      }
    }
  }
};

}  // namespace

const std::array<std::string_view, kParameterCount>& parameter_names() {
  static const std::array<std::string_view, kParameterCount> names = {
      "omega_r", "g1",        "g2",          "delta1", "delta2", "eps2",
      "eps_coeff", "i_b0", "a_crosstalk", "b_plus", "b_minus"};
  return names;
}

Vector11 to_vector(const ModelPoint& p) {
  return {p.model.omega_r,       p.model.g1,         p.model.g2,
          p.model.delta1,        p.model.delta2,     p.model.eps2,
          p.calibration.eps_coeff, p.calibration.i_b0, p.calibration.a_crosstalk,
          p.calibration.b_plus,  p.calibration.b_minus};
}

ModelPoint from_vector(const Vector11& v, int n_cut) {
  ModelPoint p;
  p.model.omega_r = v[0];
  p.model.g1 = v[1];
  p.model.g2 = v[2];
  p.model.delta1 = v[3];
  p.model.delta2 = v[4];
  p.model.eps2 = v[5];
  p.model.n_cut = n_cut;
  p.calibration.eps_coeff = v[6];
  p.calibration.i_b0 = v[7];
  p.calibration.a_crosstalk = v[8];
  p.calibration.b_plus = v[9];
  p.calibration.b_minus = v[10];
  return p;
}

PeakData load_peaks(const std::filesystem::path& path) {
  const io::CsvTable t = io::read_csv(path);
  PeakData d;
  int xcol = t.column("i_b_ma");
  if (xcol < 0) {
    xcol = t.column("eps1_ghz");
    d.abscissa = Abscissa::eps1_ghz;
  }
  const int ycol = t.column("omega_ghz");
  const int wcol = t.column("weight");
  if (xcol < 0 || ycol < 0)
    fail(ErrorCode::io, path.string() + ": need columns i_b_ma or eps1_ghz, and omega_ghz");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    PeakRecord rec{t.rows[r][xcol], t.rows[r][ycol], wcol >= 0 ? t.rows[r][wcol] : 1.0};
    if (!(rec.omega > 0) || !(rec.weight >= 0) || !std::isfinite(rec.x))
      fail(ErrorCode::io, path.string() + ": data row " + std::to_string(r + 1) +
                              " needs omega_ghz > 0, weight >= 0 and a finite abscissa");
    d.records.push_back(rec);
  }
  if (d.records.empty()) fail(ErrorCode::io, path.string() + ": no data rows");
  return d;
}

std::string peaks_to_csv(const PeakData& data, const std::vector<std::string>& preamble) {
  io::CsvTable t;
  t.header = {data.abscissa == Abscissa::bias_ma ? "i_b_ma" : "eps1_ghz", "omega_ghz", "weight"};
  for (const auto& r : data.records) t.rows.push_back({r.x, r.omega, r.weight});
  return io::to_csv(t, preamble);
}

LineSet default_lines() { return {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 2}}; }

LineSet parse_lines(const std::vector<std::string>& items) {
  LineSet out;
  for (const auto& item : items) {
    const auto dash = item.find('-');
    int i = -1, j = -1;
    try {
      if (dash == std::string::npos) throw std::invalid_argument(item);
      std::size_t a = 0, b = 0;
      i = std::stoi(item.substr(0, dash), &a);
      j = std::stoi(item.substr(dash + 1), &b);
      if (a != dash || b != item.size() - dash - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::config, "line '" + item + "': expected i-j, e.g. 0-3");
    }
    if (i < 0 || j < 0 || i == j)
      fail(ErrorCode::config, "line '" + item + "': levels must be distinct and non-negative");
    out.emplace_back(i, j);
  }
  if (out.empty()) fail(ErrorCode::config, "empty line set");
  return out;
}

double residual(const ModelPoint& params, const PeakData& data, const LineSet& lines, int threads) {
  if (data.records.empty()) fail(ErrorCode::invalid_argument, "residual: no data");
  const Unique u = unique_abscissae(data);
  return rms_from(model_lines(params, u, data.abscissa, lines, threads), u, data);
}

PeakData synth_peaks(const ModelPoint& params, const std::vector<double>& grid, Abscissa abscissa,
                     const LineSet& lines, double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0)) fail(ErrorCode::invalid_argument, "synth_peaks: noise must be >= 0");
  PeakData d;
  d.abscissa = abscissa;
  PeakData probe;
  probe.abscissa = abscissa;
  for (double x : grid) probe.records.push_back({x, 1.0, 1.0});
  const Unique u = unique_abscissae(probe);
  const auto model = model_lines(params, u, abscissa, lines, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t r = 0; r < grid.size(); ++r)
    for (double line : model[u.slot[r]]) {
      const double jitter = noise_sigma > 0 ? noise_sigma * noise(rng) : 0.0;
      d.records.push_back({grid[r], line + jitter, 1.0});
    }
  return d;
}

Bounds default_bounds() {
  Bounds b;
  b.lower = {1e-9, 1e-9, 1e-9, 1e-9, 1e-9, -20.0, 1e-9, -100.0, -0.1, -0.01, -0.01};
  b.upper = {20.0, 20.0, 20.0, 20.0, 20.0, 20.0, 1e4, 100.0, 0.1, 0.01, 0.01};
  return b;
}

FitResult fit(const ModelPoint& initial, const PeakData& data, const FitOptions& options) {
  if (data.records.empty()) fail(ErrorCode::invalid_argument, "fit: no data");
  if (options.stages != 1 && options.stages != 2)
    fail(ErrorCode::invalid_argument, "fit: stages must be 1 or 2");
  const int n_cut = options.n_cut.value_or(initial.model.n_cut);
  const Vector11 start = to_vector(initial);
  for (int i = 0; i < kParameterCount; ++i)
    if (!(start[i] >= options.bounds.lower[i] && start[i] <= options.bounds.upper[i]))
      fail(ErrorCode::invalid_argument,
           "fit: initial " + std::string(parameter_names()[i]) + " is outside its bounds");

  const Unique u = unique_abscissae(data);
  FitResult result;
  int evaluations = 0;
  auto rms_at = [&](const Vector11& v) {
    ++evaluations;
    return rms_from(model_lines(from_vector(v, n_cut), u, data.abscissa, options.lines,
                                options.threads),
                    u, data);
  };

  Vector11 current = start;
  current[8] = current[9] = current[10] = 0.0;

  if (options.offset_scan && data.abscissa == Abscissa::bias_ma &&
      options.offset_scan_points > 1) {
    const double centre = current[7];
    const double half = std::max(std::abs(centre) * options.offset_scan_span, 1e-6);
    double best = std::numeric_limits<double>::infinity(), best_x = centre;
    for (double x : spectrum::linspace(centre - half, centre + half, options.offset_scan_points)) {
      Vector11 trial = current;
      trial[7] = std::clamp(x, options.bounds.lower[7], options.bounds.upper[7]);
      const double f = rms_at(trial);
      if (f < best) {
        best = f;
        best_x = trial[7];
      }
    }
    current[7] = best_x;
  }

  auto run_stage = [&](const std::vector<int>& active, bool& converged) {
    const Vector11 origin = current;
    const Vector11 scale = step_scales(origin);
    auto to_params = [&](const std::vector<double>& z) {
      Vector11 v = origin;
      for (std::size_t k = 0; k < active.size(); ++k) v[active[k]] += scale[active[k]] * z[k];
      return v;
    };
    Minimizer nm;
    nm.budget = std::max(0, options.max_evaluations - evaluations);
    nm.trace = &result.trace;
    nm.objective = [&](const std::vector<double>& z) {
      const Vector11 v = to_params(z);
      double violation = 0.0;
      for (int i : active) {
        const double below = options.bounds.lower[i] - v[i];
        const double above = v[i] - options.bounds.upper[i];
        violation += std::max({0.0, below, above}) / scale[i];
      }
      if (violation > 0.0) return kPenalty * (1.0 + violation);
      return rms_at(v);
    };
    std::vector<double> z(active.size(), 0.0);
    double f = nm.eval(z);
    converged = false;
    double step = 1.0;
    for (int r = 0; r <= options.restarts; ++r) {
      const double before = f;
      converged = nm.run(z, f, step, options.f_tolerance, options.x_tolerance);
      if (!converged) break;
      // A restart that cannot improve confirms the minimum.
      if (r > 0 && before - f <= options.f_tolerance) break;
      step = std::max(step * 0.3, 1e-3);
    }
    current = to_params(z);
    return f;
  };

  bool converged = false;
  result.stage1_rms = run_stage({0, 1, 2, 3, 4, 5, 6, 7}, converged);
  result.stage = 1;
  result.residual_rms = result.stage1_rms;
  if (options.stages == 2) {
    current[8] = start[8];
    current[9] = start[9];
    current[10] = start[10];
    result.residual_rms = run_stage({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, converged);
    result.stage = 2;
  }
  result.converged = converged;
  result.params = from_vector(current, n_cut);
  result.residual_rms = rms_at(current);

  for (int i = 0; i < kParameterCount; ++i) {
    if (options.stages == 1 && i >= 8) continue;
    Vector11 probe = current;
    probe[i] += std::max(std::abs(current[i]) * 1e-3, 1e-9);
    if (probe[i] > options.bounds.upper[i]) probe[i] = current[i] - (probe[i] - current[i]);
    result.sensitivity[i] = rms_at(probe) - result.residual_rms;
  }
  result.evaluations = evaluations;
  return result;
}

std::string result_text(const FitResult& r) {
  std::ostringstream out;
  const Vector11 v = to_vector(r.params);
  for (int i = 0; i < kParameterCount; ++i)
    out << parameter_names()[i] << " = " << io::format_number(v[i]) << "\n";
  out << "residual_rms_ghz = " << io::format_number(r.residual_rms) << "\n";
  out << "stage1_rms_ghz = " << io::format_number(r.stage1_rms) << "\n";
  out << "stage = " << (r.stage == 2 ? "11-param" : "8-param") << "\n";
  out << "converged = " << (r.converged ? "true" : "false") << "\n";
  out << "evaluations = " << r.evaluations << "\n";
  for (int i = 0; i < kParameterCount; ++i)
    out << "sensitivity." << parameter_names()[i] << " = " << io::format_number(r.sensitivity[i])
        << "\n";
  return out.str();
}

}  // namespace usc::fit
