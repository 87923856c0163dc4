#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "usc/circuit.hpp"
#include "usc/error.hpp"

using namespace usc;
using namespace usc::circuit;

namespace {

CircuitParams small_circuit(double phi_e = 0.5) {
  CircuitParams p;
  for (auto& q : p.qubits) q = {.e_j = 10.0, .e_c = 1.0, .alpha = 0.7, .beta = 2.0, .phi_e = phi_e};
  p.e_lr = 0.3;
  p.omega_r = 1.3;
  p.n_charge = 4;
  return p;
}

}  // namespace

TEST(MassMatrix, Layout) {
  const RMatrix m = mass_matrix(0.7, 2.0, 2.0);
  EXPECT_DOUBLE_EQ(m(0, 0), 2 * 2.7);
  EXPECT_DOUBLE_EQ(m(1, 1), 2 * 1.7);
  EXPECT_DOUBLE_EQ(m(0, 1), 2 * 0.7);
  EXPECT_DOUBLE_EQ(m(2, 1), 2 * 0.7);
  EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PhaseOperator, MatrixElements) {
  const CMatrix phi = phase_operator(3);
  EXPECT_EQ(phi.rows(), 7);
  EXPECT_EQ(phi(0, 0), cplx(0, 0));
  EXPECT_NEAR((phi - phi.adjoint()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_NEAR(phi(1, 0).imag(), -1.0, 1e-15);
  const CMatrix phi2 = phase_squared(3);
  EXPECT_NEAR(phi2(2, 2).real(), std::numbers::pi * std::numbers::pi / 3, 1e-15);
  EXPECT_NEAR(phi2(0, 1).real(), -2.0, 1e-15);
  EXPECT_NEAR(phi2(0, 2).real(), 0.5, 1e-15);
}

TEST(CircuitParams, Validation) {
  auto p = small_circuit();
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.dimension(), 9 * 9 * 9);
  EXPECT_THROW(p.qubit(3), Error);
  p.n_charge = 0;
  EXPECT_THROW(p.validate(), Error);
  p = small_circuit();
  p.qubits[1].e_c = -1;
  EXPECT_THROW(p.validate(), Error);
  p = small_circuit();
  p.omega_r = 0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(QubitHamiltonian, Hermitian) {
  const auto p = small_circuit(0.47);
  const CMatrix h = build_qubit_hamiltonian(p, 1);
  EXPECT_LT(qop::max_asymmetry(h), 1e-12 * qop::max_abs(h));
  const CMatrix d = flux_derivative(p, 1);
  EXPECT_LT(qop::max_asymmetry(d), 1e-12 * qop::max_abs(d));
}

TEST(QubitHamiltonian, FluxDerivativeMatchesFiniteDifference) {
  const double h = 1e-5;
  const auto lo = small_circuit(0.48 - h), hi = small_circuit(0.48 + h), mid = small_circuit(0.48);
  const CMatrix fd = (build_qubit_hamiltonian(hi, 1) - build_qubit_hamiltonian(lo, 1)) / (2 * h);
  EXPECT_LT((fd - flux_derivative(mid, 1)).cwiseAbs().maxCoeff(), 1e-5 * qop::max_abs(fd));
}

TEST(Reduction, SymmetricPoint) {
  const auto r = two_level_reduce(small_circuit(), 1);
  EXPECT_NEAR(r.eps, 0.0, 1e-15);
  EXPECT_GT(r.delta, 0.0);
  EXPECT_GT(r.eps_slope, 0.0);
  EXPECT_LT(std::abs(r.g_matrix(0, 0)), 1e-9);
  EXPECT_LT(std::abs(r.g_matrix(1, 1)), 1e-9);
  EXPECT_GT(r.g, 0.0);
  EXPECT_NEAR(r.levels[0], 0.0, 1e-15);
  EXPECT_NEAR(r.levels[1], r.delta, 1e-12);
  EXPECT_LT((r.g_matrix - r.g_matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Reduction, TwoLevelGapTracksExactSplitting) {
  const auto sym = two_level_reduce(small_circuit(), 1);
  // |eps| <= delta is reached within a few millis of a flux quantum
  const double reach = sym.delta / sym.eps_slope;
  for (double f : {0.5 * reach, reach}) {
    const auto r = two_level_reduce(small_circuit(0.5 + f), 1, 2);
    ASSERT_LE(std::abs(r.eps), sym.delta * (1 + 1e-9));
    const double model = std::hypot(r.eps, sym.delta);
    EXPECT_LT(std::abs(model - r.levels[1]) / r.levels[1], 0.01) << "offset " << f;
  }
}

TEST(Reduction, EpsilonSignFollowsOffset) {
  const auto sym = two_level_reduce(small_circuit(), 1);
  const double f = 0.3 * sym.delta / sym.eps_slope;
  EXPECT_GT(two_level_reduce(small_circuit(0.5 + f), 1, 2).eps, 0.0);
  EXPECT_LT(two_level_reduce(small_circuit(0.5 - f), 1, 2).eps, 0.0);
}

TEST(Dicke, AssembledFromReductions) {
  const auto p = small_circuit();
  const auto r = two_level_reduce(p, 1);
  const auto d = to_dicke(r, r, p.omega_r, 6);
  EXPECT_DOUBLE_EQ(d.delta1, r.delta);
  EXPECT_DOUBLE_EQ(d.g2, r.g);
  EXPECT_EQ(d.n_cut, 6);
  EXPECT_NO_THROW(d.validate());
}

TEST(Multilevel, TwoLevelTruncationMatchesDickeModel) {
  const auto p = small_circuit();
  const auto r2 = two_level_reduce(p, 1, 2);
  const auto d = to_dicke(r2, r2, p.omega_r, 12);
  const RVector dicke_e = qop::hermitian_eig(dicke::build_h_dicke(d), {.count = 6, .vectors = false}).values;
  const RVector multi_e =
      qop::hermitian_eig(build_multilevel(r2, r2, p.omega_r, 12), {.count = 6, .vectors = false}).values;
  for (int i = 1; i < 6; ++i)
    EXPECT_NEAR(multi_e[i] - multi_e[0], dicke_e[i] - dicke_e[0], 1e-9) << "level " << i;
}

TEST(Interaction, LoopCoefficients) {
  const auto c = interaction_coefficients(0.3);
  EXPECT_DOUBLE_EQ(c[0], -0.6);
  EXPECT_DOUBLE_EQ(c[1], 0.6);
  EXPECT_DOUBLE_EQ(c[2], -0.6);
}

TEST(Convergence, ReportShape) {
  auto p = small_circuit();
  const auto r = check_charge_convergence(p, 1);
  EXPECT_EQ(r.coarse.size(), 4);
  EXPECT_EQ(r.fine.size(), 4);
  EXPECT_DOUBLE_EQ(r.tolerance, 1e-3);
  EXPECT_NEAR(r.max_change, (r.coarse - r.fine).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(r.converged, r.max_change < r.tolerance);
}
