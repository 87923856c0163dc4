#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "usc/csv.hpp"
#include "usc/error.hpp"
#include "usc/fit.hpp"

using namespace usc;
using namespace usc::fit;

namespace {

ModelPoint truth(int n_cut = 12) {
  auto p = spectrum::table_one();
  p.model.n_cut = n_cut;
  return p;
}

}  // namespace

TEST(Parameters, VectorRoundTrip) {
  const auto p = truth();
  const Vector11 v = to_vector(p);
  EXPECT_EQ(parameter_names()[0], "omega_r");
  EXPECT_EQ(parameter_names()[10], "b_minus");
  EXPECT_DOUBLE_EQ(v[0], 5.15);
  EXPECT_DOUBLE_EQ(v[7], 0.547);
  EXPECT_DOUBLE_EQ(v[8], -9.43e-3);
  EXPECT_EQ(to_vector(from_vector(v, 12)), v);
  EXPECT_EQ(from_vector(v, 17).model.n_cut, 17);
}

TEST(Lines, DefaultsAndParsing) {
  const LineSet d = default_lines();
  ASSERT_EQ(d.size(), 7u);
  EXPECT_EQ(d.front(), std::make_pair(0, 1));
  EXPECT_EQ(d.back(), std::make_pair(1, 2));
  EXPECT_EQ(parse_lines({"0-3", "2-4"}), (LineSet{{0, 3}, {2, 4}}));
  EXPECT_THROW(parse_lines({"3"}), Error);
  EXPECT_THROW(parse_lines({"2-2"}), Error);
  EXPECT_THROW(parse_lines({}), Error);
}

TEST(Synth, DeterministicAndExactWithoutNoise) {
  const auto p = truth();
  const auto grid = spectrum::linspace(0.53, 0.56, 7);
  const auto a = synth_peaks(p, grid, Abscissa::bias_ma, default_lines(), 0.002, 5);
  const auto b = synth_peaks(p, grid, Abscissa::bias_ma, default_lines(), 0.002, 5);
  const auto c = synth_peaks(p, grid, Abscissa::bias_ma, default_lines(), 0.002, 6);
  ASSERT_EQ(a.records.size(), 7u * 7u);
  bool differs = false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].omega, b.records[i].omega);
    differs = differs || a.records[i].omega != c.records[i].omega;
  }
  EXPECT_TRUE(differs);
  const auto clean = synth_peaks(p, grid, Abscissa::bias_ma, default_lines(), 0.0, 5);
  EXPECT_LT(residual(p, clean), 1e-12);
  EXPECT_GT(residual(p, a), 1e-4);
}

TEST(Residual, CrosstalkLeavesSystematicResidual) {
  const auto p = truth();
  const auto data = synth_peaks(p, spectrum::linspace(0.53, 0.565, 15), Abscissa::bias_ma,
                                default_lines(), 0.0, 1);
  auto no_ab = p;
  no_ab.calibration.a_crosstalk = no_ab.calibration.b_plus = no_ab.calibration.b_minus = 0.0;
  EXPECT_GT(residual(no_ab, data), 1e-3);
  EXPECT_LT(residual(p, data), 1e-12);
}

TEST(Residual, RejectsEmptyData) {
  EXPECT_THROW(residual(truth(), PeakData{}), Error);
}

TEST(PeakIo, CsvRoundTrip) {
  const auto data = synth_peaks(truth(), {-1.0, 0.5}, Abscissa::eps1_ghz, {{0, 1}, {0, 3}}, 0.0, 1);
  const auto path = std::filesystem::temp_directory_path() / "usc_test_peaks.csv";
  io::write_atomic(path, peaks_to_csv(data, {"source=test"}));
  const auto back = load_peaks(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.abscissa, Abscissa::eps1_ghz);
  ASSERT_EQ(back.records.size(), data.records.size());
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    EXPECT_NEAR(back.records[i].x, data.records[i].x, 1e-11);
    EXPECT_NEAR(back.records[i].omega, data.records[i].omega, 1e-11 * data.records[i].omega);
    EXPECT_DOUBLE_EQ(back.records[i].weight, 1.0);
  }
}

TEST(Fit, RejectsBadInput) {
  EXPECT_THROW(fit::fit(truth(), PeakData{}), Error);
  const auto data = synth_peaks(truth(), {-1.0}, Abscissa::eps1_ghz, default_lines(), 0.0, 1);
  EXPECT_THROW(fit::fit(truth(), data, {.stages = 3}), Error);
  auto out = truth();
  out.model.omega_r = 50.0;
  EXPECT_THROW(fit::fit(out, data), Error);
}

TEST(Fit, StageOneRecoversModelWithoutCrosstalk) {
  auto p = truth(10);
  p.calibration.a_crosstalk = p.calibration.b_plus = p.calibration.b_minus = 0.0;
  const auto data = synth_peaks(p, spectrum::linspace(-3.0, 3.0, 13), Abscissa::eps1_ghz,
                                {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 0.0, 1);
  auto start = p;
  start.model.g1 *= 1.01;
  start.model.delta2 *= 0.99;
  start.model.omega_r *= 1.005;
  const auto r = fit::fit(start, data, {.lines = {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, .stages = 1, .max_evaluations = 6000});
  EXPECT_EQ(r.stage, 1);
  EXPECT_LT(r.residual_rms, 1e-6);
  EXPECT_NEAR(r.params.model.g1, 3.33, 3.33e-3);
  EXPECT_NEAR(r.params.model.delta2, 1.27, 1.27e-3);
  EXPECT_NEAR(r.params.model.omega_r, 5.15, 5.15e-3);
  EXPECT_FALSE(r.trace.empty());
  EXPECT_FALSE(result_text(r).empty());
}
