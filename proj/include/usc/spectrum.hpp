#pragma once

// Flux-bias sweeps of the two-qubit model: crosstalk mapping, transition
// tables, bare-state projections and avoided-crossing search.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "usc/dicke.hpp"

namespace usc::spectrum {

using dicke::DickeParams;

/// Maps the swept bias onto the model. b_plus is used for eps1 >= 0 and
/// b_minus for eps1 < 0; b_plus/b_minus are per GHz of eps1.
struct SweepCalibration {
  double a_crosstalk = 0.0;  // eps2 -> eps2 + A eps1
  double b_plus = 0.0;       // omega_r -> omega_r (1 + B eps1)
  double b_minus = 0.0;
  double eps_coeff = 1.0;    // GHz / mA
  double i_b0 = 0.0;         // mA
};

struct ModelPoint {
  DickeParams model;
  SweepCalibration calibration;
};

/// The fitted device values (frequencies in GHz, eps_coeff in GHz/mA, i_b0 in mA).
ModelPoint table_one();

double bias_to_epsilon(double i_b, const SweepCalibration& cal);
double epsilon_to_bias(double eps1, const SweepCalibration& cal);

/// Sets eps1 and applies eps2 -> eps2 + A eps1, omega_r -> omega_r (1 + B eps1).
/// Throws invalid_argument when the modified omega_r is not positive.
DickeParams apply_crosstalk(const DickeParams& base, double eps1, const SweepCalibration& cal);

enum class Model { flux, reference };

struct SweepOptions {
  int n_levels = 8;
  bool keep_vectors = false;
  int threads = 1;
  Model model = Model::flux;
};

struct SpectrumPoint {
  double eps1 = 0.0;
  DickeParams params;  // after crosstalk
  RVector energies;    // lowest n_levels, ascending
  CMatrix vectors;     // flux basis columns, only with keep_vectors
};

struct SpectrumTable {
  std::vector<SpectrumPoint> points;
  int n_levels = 0;
  Model model = Model::flux;

  /// omega_ij = E_j - E_i at grid point p.
  double transition(std::size_t p, int i, int j) const;
  bool has_vectors() const;
};

SpectrumTable sweep(const DickeParams& base, const SweepCalibration& cal,
                    std::span<const double> grid, const SweepOptions& options = {});

/// P[(point, state, label)] = |<psi_state | label>|^2 with bare labels taken
/// in the qubit eigenframe. completeness[(point, state)] sums over the whole
/// bare basis.
struct ProjectionTable {
  std::vector<double> grid;
  std::vector<int> states;
  std::vector<dicke::BareLabel> labels;
  std::vector<double> values;
  std::vector<double> completeness;

  double at(std::size_t point, std::size_t state, std::size_t label) const {
    return values[(point * states.size() + state) * labels.size() + label];
  }
};

ProjectionTable projections(const SpectrumTable& table, std::span<const int> states,
                            std::span<const dicke::BareLabel> labels);

struct AnticrossOptions {
  int grid_points = 41;
  double tolerance = 1e-5;  // GHz in eps1
  int threads = 1;
};

struct Anticrossing {
  double eps1_star = 0.0;
  double gap_min = 0.0;
  double half_splitting = 0.0;
  double omega_lower = 0.0;   // omega_i0 at eps1_star
  double omega_upper = 0.0;   // omega_j0 at eps1_star
  double center_frequency = 0.0;  // (omega_i0 + omega_j0) / 2
  int lower = 0;
  int upper = 0;
};

struct AnticrossSearch {
  std::optional<Anticrossing> crossing;
  bool monotone = false;
  std::string diagnostic;
};

/// Locates min(omega_j0 - omega_i0) over eps1 in [lo, hi]: a grid scan
/// followed by golden-section refinement. If the minimum sits on the window
/// edge the search reports `monotone` and leaves `crossing` empty.
AnticrossSearch find_anticrossing(const DickeParams& base, const SweepCalibration& cal, int lower,
                                  int upper, double lo, double hi,
                                  const AnticrossOptions& options = {});

struct DressedFrequencies {
  double omega_q1 = 0.0;      // branch continued from |eg0>
  double omega_q2 = 0.0;      // branch continued from |ge0>
  double omega_photon = 0.0;  // branch continued from |gg1>
  int index_q1 = 0, index_q2 = 0, index_photon = 0;
  double dominance_q1 = 0.0, dominance_q2 = 0.0, dominance_photon = 0.0;
  bool ambiguous = false;
};

struct DressedOptions {
  int steps = 100;     // coupling continuation steps 0 -> g
  int tracked = 12;    // eigenstates considered at every step
  double min_dominance = 0.4;
};

/// Transition frequencies of the eigenstates adiabatically connected to
/// |eg0>, |ge0>, |gg1> as the couplings are switched on. dominance_* is the
/// smallest step-to-step overlap met along the way; values below
/// min_dominance set `ambiguous`.
DressedFrequencies dressed_frequencies(const DickeParams& base, const SweepCalibration& cal,
                                       double eps1, const DressedOptions& options = {});

std::vector<double> linspace(double start, double stop, int points);

}  // namespace usc::spectrum
