#pragma once

// Least-squares recovery of the eleven model and calibration parameters from
// (bias, peak frequency) observations. Peaks are matched to the nearest model
// line, so the objective is piecewise smooth and minimized without gradients.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usc/spectrum.hpp"

namespace usc::fit {

using spectrum::ModelPoint;

inline constexpr int kParameterCount = 11;
using Vector11 = std::array<double, kParameterCount>;

/// omega_r, g1, g2, delta1, delta2, eps2, eps_coeff, i_b0, a_crosstalk, b_plus, b_minus
const std::array<std::string_view, kParameterCount>& parameter_names();
Vector11 to_vector(const ModelPoint& p);
ModelPoint from_vector(const Vector11& v, int n_cut);

enum class Abscissa { bias_ma, eps1_ghz };

struct PeakRecord {
  double x = 0.0;      // bias (mA) or eps1 (GHz)
  double omega = 0.0;  // GHz
  double weight = 1.0;
};

struct PeakData {
  Abscissa abscissa = Abscissa::bias_ma;
  std::vector<PeakRecord> records;
};

/// Columns: i_b_ma or eps1_ghz, omega_ghz, optional weight.
PeakData load_peaks(const std::filesystem::path& path);
std::string peaks_to_csv(const PeakData& data, const std::vector<std::string>& preamble = {});

/// (i, j) pairs, omega_ij = E_j - E_i. Default: omega_i0 for i = 1..6 and omega_12.
using LineSet = std::vector<std::pair<int, int>>;
LineSet default_lines();
LineSet parse_lines(const std::vector<std::string>& items);  // "0-1", "1-2", ...

/// Weighted rms distance from every peak to its nearest model line. Ties go
/// to the earlier line in `lines`.
double residual(const ModelPoint& params, const PeakData& data, const LineSet& lines = default_lines(),
                int threads = 1);

/// Noise-free lines plus N(0, noise_sigma) from a 64-bit Mersenne twister.
PeakData synth_peaks(const ModelPoint& params, const std::vector<double>& grid, Abscissa abscissa,
                     const LineSet& lines, double noise_sigma, std::uint64_t seed);

/// Inclusive bounds per parameter.
struct Bounds {
  Vector11 lower;
  Vector11 upper;
};
Bounds default_bounds();

struct FitOptions {
  LineSet lines = default_lines();
  int stages = 2;              // 1: first eight parameters with A = B = 0; 2: then all eleven
  int max_evaluations = 40000; // across all stages
  int restarts = 6;
  double f_tolerance = 1e-13;  // GHz, rms spread across the simplex
  double x_tolerance = 1e-9;   // normalized simplex size
  bool offset_scan = true;     // coarse scan of i_b0 before the simplex (bias data only)
  double offset_scan_span = 0.2;
  int offset_scan_points = 401;
  int threads = 1;
  std::optional<int> n_cut;    // Fock cutoff during the fit, default from the initial point
  Bounds bounds = default_bounds();
};

struct FitResult {
  ModelPoint params;
  double residual_rms = 0.0;
  double stage1_rms = 0.0;
  int stage = 0;               // last stage run: 1 (8 parameters) or 2 (11)
  bool converged = false;
  int evaluations = 0;
  Vector11 sensitivity{};      // rms change for a 1e-3 relative step of each parameter
  std::vector<double> trace;   // best rms after every simplex iteration
};

FitResult fit(const ModelPoint& initial, const PeakData& data, const FitOptions& options = {});

/// key = value lines for a result.
std::string result_text(const FitResult& r);

}  // namespace usc::fit
