#include "usc/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "usc/error.hpp"
#include "usc/parallel.hpp"

namespace usc::spectrum {

ModelPoint table_one() {
  ModelPoint t;
  t.model.omega_r = 5.15;
  t.model.g1 = 3.33;
  t.model.g2 = 3.45;
  t.model.delta1 = 1.31;
  t.model.delta2 = 1.27;
  t.model.eps1 = 0.0;
  t.model.eps2 = -3.22;
  t.model.n_cut = dicke::kDefaultFockCutoff;
  t.calibration.eps_coeff = 201.6;
  t.calibration.i_b0 = 0.547;
  t.calibration.a_crosstalk = -9.43e-3;
  t.calibration.b_plus = 0.78e-3;
  t.calibration.b_minus = 0.73e-3;
  return t;
}

double bias_to_epsilon(double i_b, const SweepCalibration& cal) {
  return cal.eps_coeff * (i_b - cal.i_b0);
}

double epsilon_to_bias(double eps1, const SweepCalibration& cal) {
  if (cal.eps_coeff == 0.0)
    fail(ErrorCode::invalid_argument, "epsilon_to_bias: eps_coeff is zero");
  return cal.i_b0 + eps1 / cal.eps_coeff;
}

DickeParams apply_crosstalk(const DickeParams& base, double eps1, const SweepCalibration& cal) {
  DickeParams p = base;
  p.eps1 = eps1;
  p.eps2 = base.eps2 + cal.a_crosstalk * eps1;
  const double b = eps1 >= 0.0 ? cal.b_plus : cal.b_minus;
  p.omega_r = base.omega_r * (1.0 + b * eps1);
  if (!(p.omega_r > 0.0)) {
    std::ostringstream msg;
    msg << "apply_crosstalk: resonator frequency becomes " << p.omega_r << " GHz at eps1 = "
        << eps1 << " GHz";
    fail(ErrorCode::invalid_argument, msg.str());
  }
  return p;
}

double SpectrumTable::transition(std::size_t p, int i, int j) const {
  const auto& e = points.at(p).energies;
  if (i < 0 || j < 0 || i >= e.size() || j >= e.size())
    fail(ErrorCode::invalid_argument, "transition: level index outside the stored levels");
  return e[j] - e[i];
}

bool SpectrumTable::has_vectors() const {
  return !points.empty() && points.front().vectors.cols() > 0;
}

SpectrumTable sweep(const DickeParams& base, const SweepCalibration& cal,
                    std::span<const double> grid, const SweepOptions& options) {
  if (grid.empty()) fail(ErrorCode::invalid_argument, "sweep: empty grid");
  if (options.n_levels < 2) fail(ErrorCode::invalid_argument, "sweep: n_levels must be >= 2");
  base.validate();
  if (options.n_levels > base.dimension())
    fail(ErrorCode::invalid_argument, "sweep: n_levels exceeds the Hilbert-space dimension");

  SpectrumTable table;
  table.n_levels = options.n_levels;
  table.model = options.model;
  table.points.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t k) {
    SpectrumPoint& pt = table.points[k];
    pt.eps1 = grid[k];
    pt.params = apply_crosstalk(base, grid[k], cal);
    if (options.model == Model::reference) {
      auto eig = qop::hermitian_eig(dicke::build_h_reference(pt.params),
                                    {.count = options.n_levels, .vectors = options.keep_vectors});
      pt.energies = eig.values;
      pt.vectors = std::move(eig.vectors);
    } else if (options.keep_vectors) {
      auto eig = qop::hermitian_eig(dicke::build_h_flux(pt.params), {.count = options.n_levels});
      pt.energies = eig.values;
      pt.vectors = std::move(eig.vectors);
    } else {
      pt.energies = dicke::flux_energies(pt.params, options.n_levels);
    }
  });
  return table;
}

ProjectionTable projections(const SpectrumTable& table, std::span<const int> states,
                            std::span<const dicke::BareLabel> labels) {
  if (!table.has_vectors())
    fail(ErrorCode::invalid_argument, "projections: spectrum table has no eigenvectors");
  if (table.model != Model::flux)
    fail(ErrorCode::invalid_argument, "projections: need a sweep of the interacting model");
  for (int s : states)
    if (s < 0 || s >= table.n_levels)
      fail(ErrorCode::invalid_argument,
           "projections: state " + std::to_string(s) + " was not kept by the sweep");

  ProjectionTable out;
  out.states.assign(states.begin(), states.end());
  out.labels.assign(labels.begin(), labels.end());
  out.values.reserve(table.points.size() * states.size() * labels.size());
  for (const auto& pt : table.points) {
    std::vector<int> index;
    for (const auto& l : labels) index.push_back(dicke::bare_index(pt.params, l));
    const CMatrix u = dicke::qubit_frame_rotation(pt.params);
    out.grid.push_back(pt.eps1);
    for (int s : states) {
      const CVector psi = u * pt.vectors.col(s);
      for (int i : index) out.values.push_back(std::norm(psi[i]));
      out.completeness.push_back(psi.squaredNorm());
    }
  }
  return out;
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) fail(ErrorCode::invalid_argument, "linspace: need at least one point");
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = start;
    return v;
  }
  const double step = (stop - start) / (points - 1);
  for (int k = 0; k < points; ++k) v[k] = start + step * k;
  v.back() = stop;
  return v;
}

AnticrossSearch find_anticrossing(const DickeParams& base, const SweepCalibration& cal, int lower,
                                  int upper, double lo, double hi,
                                  const AnticrossOptions& options) {
  if (lower < 0 || upper <= lower)
    fail(ErrorCode::invalid_argument, "find_anticrossing: need 0 <= lower < upper");
  if (!(hi > lo)) fail(ErrorCode::invalid_argument, "find_anticrossing: empty window");
  if (options.grid_points < 3)
    fail(ErrorCode::invalid_argument, "find_anticrossing: need at least 3 grid points");
  if (!(options.tolerance > 0.0))
    fail(ErrorCode::invalid_argument, "find_anticrossing: tolerance must be positive");

  auto energies = [&](double e) {
    return dicke::flux_energies(apply_crosstalk(base, e, cal), upper + 1);
  };
  auto gap = [&](double e) {
    const RVector w = energies(e);
    return w[upper] - w[lower];
  };

  const std::vector<double> grid = linspace(lo, hi, options.grid_points);
  std::vector<double> gaps(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t k) { gaps[k] = gap(grid[k]); });
  const auto k = std::size_t(std::min_element(gaps.begin(), gaps.end()) - gaps.begin());

  AnticrossSearch result;
  if (k == 0 || k + 1 == grid.size()) {
    std::ostringstream msg;
    msg << "gap omega_" << upper << "0 - omega_" << lower << "0 has no interior minimum in ["
        << lo << ", " << hi << "] GHz (smallest at the window edge eps1 = " << grid[k] << ")";
    result.monotone = true;
    result.diagnostic = msg.str();
    return result;
  }

  // Golden-section refinement on the bracketing cell pair.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[k - 1], b = grid[k + 1];
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = gap(c), fd = gap(d);
  while (b - a > options.tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = gap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = gap(d);
    }
  }
  Anticrossing x;
  x.eps1_star = 0.5 * (a + b);
  const RVector w = energies(x.eps1_star);
  x.lower = lower;
  x.upper = upper;
  x.gap_min = w[upper] - w[lower];
  x.half_splitting = 0.5 * x.gap_min;
  x.omega_lower = w[lower] - w[0];
  x.omega_upper = w[upper] - w[0];
  x.center_frequency = 0.5 * (x.omega_lower + x.omega_upper);
  result.crossing = x;
  return result;
}

DressedFrequencies dressed_frequencies(const DickeParams& base, const SweepCalibration& cal,
                                       double eps1, const DressedOptions& options) {
  if (options.steps < 1 || options.tracked < 2)
    fail(ErrorCode::invalid_argument, "dressed_frequencies: need steps >= 1 and tracked >= 2");
  const DickeParams full = apply_crosstalk(base, eps1, cal);
  const int tracked = std::min(options.tracked, full.dimension());

  const std::array<dicke::BareLabel, 3> seeds = {dicke::BareLabel::parse("eg0"),
                                                 dicke::BareLabel::parse("ge0"),
                                                 dicke::BareLabel::parse("gg1")};
  std::array<CVector, 3> current;
  std::array<int, 3> index{};
  std::array<double, 3> dominance{1.0, 1.0, 1.0};
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    current[s] = CVector::Zero(full.dimension());
    current[s][dicke::bare_index(full, seeds[s])] = 1.0;
  }

  RVector energies;
  for (int step = 0; step <= options.steps; ++step) {
    const double lambda = double(step) / options.steps;
    DickeParams p = full;
    p.g1 *= lambda;
    p.g2 *= lambda;
    const auto eig = qop::hermitian_eig(dicke::build_h_dicke(p), {.count = tracked});
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const RVector overlaps = (eig.vectors.adjoint() * current[s]).cwiseAbs2();
      Eigen::Index best = 0;
      const double top = overlaps.maxCoeff(&best);
      dominance[s] = std::min(dominance[s], top);
      index[s] = int(best);
      current[s] = eig.vectors.col(best);
    }
    energies = eig.values;
  }

  DressedFrequencies out;
  out.index_q1 = index[0];
  out.index_q2 = index[1];
  out.index_photon = index[2];
  out.omega_q1 = energies[index[0]] - energies[0];
  out.omega_q2 = energies[index[1]] - energies[0];
  out.omega_photon = energies[index[2]] - energies[0];
  out.dominance_q1 = dominance[0];
  out.dominance_q2 = dominance[1];
  out.dominance_photon = dominance[2];
  out.ambiguous = *std::min_element(dominance.begin(), dominance.end()) < options.min_dominance;
  return out;
}

}  // namespace usc::spectrum
