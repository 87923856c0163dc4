#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "usc/error.hpp"
#include "usc/spectrum.hpp"

using namespace usc;
using namespace usc::spectrum;

namespace {

SweepCalibration no_crosstalk() {
  auto cal = table_one().calibration;
  cal.a_crosstalk = cal.b_plus = cal.b_minus = 0.0;
  return cal;
}

}  // namespace

TEST(TableOne, Values) {
  const auto t = table_one();
  EXPECT_DOUBLE_EQ(t.model.omega_r, 5.15);
  EXPECT_DOUBLE_EQ(t.model.g1, 3.33);
  EXPECT_DOUBLE_EQ(t.model.g2, 3.45);
  EXPECT_DOUBLE_EQ(t.model.delta1, 1.31);
  EXPECT_DOUBLE_EQ(t.model.delta2, 1.27);
  EXPECT_DOUBLE_EQ(t.model.eps2, -3.22);
  EXPECT_DOUBLE_EQ(t.calibration.eps_coeff, 201.6);
  EXPECT_DOUBLE_EQ(t.calibration.i_b0, 0.547);
  EXPECT_DOUBLE_EQ(t.calibration.a_crosstalk, -9.43e-3);
  EXPECT_DOUBLE_EQ(t.calibration.b_plus, 0.78e-3);
  EXPECT_DOUBLE_EQ(t.calibration.b_minus, 0.73e-3);
}

TEST(BiasMapping, RoundTrip) {
  const auto cal = table_one().calibration;
  EXPECT_DOUBLE_EQ(bias_to_epsilon(cal.i_b0, cal), 0.0);
  for (double i : {0.53, 0.547, 0.56}) EXPECT_NEAR(epsilon_to_bias(bias_to_epsilon(i, cal), cal), i, 1e-15);
  EXPECT_NEAR(bias_to_epsilon(0.557, cal), 2.016, 1e-12);
}

TEST(Crosstalk, AppliesBranchCoefficients) {
  const auto t = table_one();
  const auto plus = apply_crosstalk(t.model, 2.0, t.calibration);
  EXPECT_DOUBLE_EQ(plus.eps1, 2.0);
  EXPECT_NEAR(plus.eps2, -3.22 - 9.43e-3 * 2.0, 1e-15);
  EXPECT_NEAR(plus.omega_r, 5.15 * (1 + 0.78e-3 * 2.0), 1e-15);
  const auto minus = apply_crosstalk(t.model, -2.0, t.calibration);
  EXPECT_NEAR(minus.eps2, -3.22 + 9.43e-3 * 2.0, 1e-15);
  EXPECT_NEAR(minus.omega_r, 5.15 * (1 - 0.73e-3 * 2.0), 1e-15);
}

TEST(Crosstalk, RejectsNonPositiveResonator) {
  const auto t = table_one();
  auto cal = t.calibration;
  cal.b_minus = 0.5;
  EXPECT_THROW(apply_crosstalk(t.model, -3.0, cal), Error);
}

TEST(Sweep, TransitionsMatchDirectDiagonalization) {
  const auto t = table_one();
  const std::vector<double> grid{-2.5, 0.0, 1.5};
  const auto table = sweep(t.model, t.calibration, grid, {.n_levels = 5});
  ASSERT_EQ(table.points.size(), 3u);
  EXPECT_FALSE(table.has_vectors());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto model = apply_crosstalk(t.model, grid[p], t.calibration);
    const RVector e = dicke::flux_energies(model, 5);
    EXPECT_NEAR(table.transition(p, 0, 3), e[3] - e[0], 1e-10);
    EXPECT_NEAR(table.transition(p, 1, 2), e[2] - e[1], 1e-10);
  }
  EXPECT_THROW(table.transition(0, 0, 5), Error);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const auto t = table_one();
  const auto grid = linspace(-3, 3, 9);
  const auto a = sweep(t.model, t.calibration, grid, {.n_levels = 4, .threads = 1});
  const auto b = sweep(t.model, t.calibration, grid, {.n_levels = 4, .threads = 3});
  for (std::size_t p = 0; p < grid.size(); ++p) EXPECT_EQ(a.points[p].energies, b.points[p].energies);
}

TEST(Sweep, ReferenceModelUsesRenormalizedGaps) {
  const auto t = table_one();
  const std::vector<double> grid{0.0};
  const auto cal = no_crosstalk();
  const auto ref = sweep(t.model, cal, grid, {.n_levels = 4, .model = Model::reference});
  const double d1 = dicke::renormalized_gap(1.31, 3.33, 5.15);
  const double d2 = dicke::renormalized_gap(1.27, 3.45, 5.15);
  const double w2 = std::hypot(-3.22, d2);
  // at eps1 = 0 the two lowest excitations are the dressed qubits
  EXPECT_NEAR(ref.transition(0, 0, 1), d1, 1e-12);
  EXPECT_NEAR(ref.transition(0, 0, 2), w2, 1e-12);
}

TEST(Sweep, VectorsAreKeptWhenAsked) {
  const auto t = table_one();
  const std::vector<double> grid{-1.0};
  const auto table = sweep(t.model, t.calibration, grid, {.n_levels = 3, .keep_vectors = true});
  ASSERT_TRUE(table.has_vectors());
  EXPECT_EQ(table.points[0].vectors.cols(), 3);
  EXPECT_EQ(table.points[0].vectors.rows(), t.model.dimension());
}

TEST(Projections, CompletenessAndDominantStates) {
  const auto t = table_one();
  const std::vector<double> grid{-2.4};
  const auto table = sweep(t.model, t.calibration, grid, {.n_levels = 5, .keep_vectors = true});
  const std::vector<int> states{0, 3, 4};
  const std::vector<dicke::BareLabel> labels{dicke::BareLabel::parse("gg1"), dicke::BareLabel::parse("ee0")};
  const auto proj = projections(table, states, labels);
  for (double c : proj.completeness) EXPECT_NEAR(c, 1.0, 1e-9);
  for (std::size_t s = 0; s < states.size(); ++s)
    for (std::size_t l = 0; l < labels.size(); ++l) {
      EXPECT_GE(proj.at(0, s, l), 0.0);
      EXPECT_LE(proj.at(0, s, l), 1.0 + 1e-12);
    }
  EXPECT_GT(proj.at(0, 1, 0), 0.5);  // state 3 mostly |gg1>
  EXPECT_GT(proj.at(0, 2, 1), 0.5);  // state 4 mostly |ee0>
}

TEST(Projections, RequireVectors) {
  const auto t = table_one();
  const std::vector<double> grid{-2.4};
  const auto table = sweep(t.model, t.calibration, grid, {.n_levels = 5});
  const std::vector<int> states{3};
  const std::vector<dicke::BareLabel> labels{dicke::BareLabel::parse("gg1")};
  EXPECT_THROW(projections(table, states, labels), Error);
}

TEST(Anticrossing, FoundInsideWindow) {
  const auto t = table_one();
  const auto search = find_anticrossing(t.model, no_crosstalk(), 3, 4, -3.0, -1.0);
  ASSERT_TRUE(search.crossing.has_value()) << search.diagnostic;
  const auto& c = *search.crossing;
  EXPECT_GT(c.eps1_star, -3.0);
  EXPECT_LT(c.eps1_star, -1.0);
  EXPECT_NEAR(c.half_splitting, 0.5 * c.gap_min, 1e-15);
  EXPECT_NEAR(c.gap_min, c.omega_upper - c.omega_lower, 1e-12);
  // the refined point beats its neighbours
  for (double d : {-1e-3, 1e-3}) {
    const RVector e = dicke::flux_energies(apply_crosstalk(t.model, c.eps1_star + d, no_crosstalk()), 5);
    EXPECT_GE(e[4] - e[3], c.gap_min - 1e-9);
  }
}

TEST(Anticrossing, MonotoneWindowIsReported) {
  const auto t = table_one();
  const auto search = find_anticrossing(t.model, no_crosstalk(), 3, 4, -1.0, -0.5, {.grid_points = 11});
  EXPECT_TRUE(search.monotone);
  EXPECT_FALSE(search.crossing.has_value());
  EXPECT_FALSE(search.diagnostic.empty());
}

TEST(Anticrossing, RejectsBadArguments) {
  const auto t = table_one();
  EXPECT_THROW(find_anticrossing(t.model, no_crosstalk(), 4, 3, -3.0, -1.0), Error);
  EXPECT_THROW(find_anticrossing(t.model, no_crosstalk(), 3, 4, -1.0, -3.0), Error);
}

TEST(Dressed, BranchesAreFollowed) {
  const auto t = table_one();
  const auto d = dressed_frequencies(t.model, no_crosstalk(), -2.06, {.steps = 40});
  EXPECT_FALSE(d.ambiguous);
  EXPECT_GT(d.omega_q1, 0.0);
  EXPECT_GT(d.omega_q2, 0.0);
  EXPECT_GT(d.omega_photon, 0.0);
  EXPECT_NE(d.index_q1, d.index_q2);
  EXPECT_NE(d.index_q1, d.index_photon);
  EXPECT_NE(d.index_q2, d.index_photon);
}

TEST(Dressed, UncoupledLimitGivesBareFrequencies) {
  auto t = table_one();
  t.model.g1 = t.model.g2 = 0.0;
  const auto d = dressed_frequencies(t.model, no_crosstalk(), -2.0, {.steps = 5});
  EXPECT_NEAR(d.omega_q1, std::hypot(2.0, 1.31), 1e-10);
  EXPECT_NEAR(d.omega_q2, std::hypot(3.22, 1.27), 1e-10);
  EXPECT_NEAR(d.omega_photon, 5.15, 1e-10);
}

TEST(Linspace, Endpoints) {
  const auto v = linspace(-4, 4, 81);
  ASSERT_EQ(v.size(), 81u);
  EXPECT_DOUBLE_EQ(v.front(), -4.0);
  EXPECT_DOUBLE_EQ(v.back(), 4.0);
  EXPECT_NEAR(v[40], 0.0, 1e-15);
  EXPECT_EQ(linspace(1.0, 2.0, 1), std::vector<double>{1.0});
}
