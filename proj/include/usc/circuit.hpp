#pragma once

// Charge-basis quantization of a four-junction flux qubit galvanically
// coupled to an LC resonator, and its reduction to the two-level model.
// Energies in GHz; external flux phi_e in units of the flux quantum.

#include <array>

#include "usc/dicke.hpp"
#include "usc/qop.hpp"

namespace usc::circuit {

struct QubitCircuit {
  double e_j = 0.0;    // junction energy
  double e_c = 0.0;    // charging energy
  double alpha = 0.0;  // small-junction area ratio
  double beta = 0.0;   // shared-junction area ratio
  double phi_e = 0.5;  // frustration, 0.5 is the degeneracy point
};

struct CircuitParams {
  std::array<QubitCircuit, 2> qubits;
  double e_lr = 0.0;     // inductive energy of the resonator loop
  double omega_r = 0.0;  // resonator frequency
  int n_charge = 7;      // charges -n_charge..n_charge per coordinate

  void validate() const;
  const QubitCircuit& qubit(int k) const;  // k = 1 or 2
  int dimension() const;
};

/// c_j [[beta+alpha, alpha, alpha], [alpha, 1+alpha, alpha], [alpha, alpha, 1+alpha]].
RMatrix mass_matrix(double alpha, double beta, double c_j = 1.0);

/// <n|phi|m> on the compact phase interval (-pi, pi] in the charge basis
/// n = -n_charge..n_charge.
CMatrix phase_operator(int n_charge);

/// <n|phi^2|m>: pi^2/3 on the diagonal, 2 (-1)^k / k^2 off it.
CMatrix phase_squared(int n_charge);

/// Hamiltonian of qubit k over (n_beta, n_a, n_b):
///   4 E_c n' M^-1 n + E_Lr phi_beta^2
///   - E_J [beta cos phi_beta + cos phi_a + cos phi_b
///          + alpha cos(2 pi phi_e - phi_beta - phi_a - phi_b)]
CMatrix build_qubit_hamiltonian(const CircuitParams& p, int k);

/// dH / dphi_e of build_qubit_hamiltonian.
CMatrix flux_derivative(const CircuitParams& p, int k);

/// phi_beta lifted to the three-coordinate basis.
CMatrix phi_beta(const CircuitParams& p);

struct QubitSpectrum {
  RVector levels;   // lowest eigenenergies, ascending
  CMatrix vectors;
};

QubitSpectrum solve_qubit(const CircuitParams& p, int k, int n_levels);

/// g_ij = sqrt(omega_r E_Lr) <i|phi_beta|j> on the given eigenvectors, with
/// eigenvector phases fixed so that g_0j >= 0 wherever it is nonzero.
CMatrix coupling_elements(const CircuitParams& p, QubitSpectrum& spectrum);

struct QubitReduction {
  RVector levels;      // Omega_i relative to the ground state
  CMatrix g_matrix;    // g_ij at phi_e
  double eps = 0.0;    // eps_slope (phi_e - 0.5), phi_e folded into (0, 1]
  double delta = 0.0;  // Omega_1 - Omega_0 at phi_e = 0.5
  double g = 0.0;      // hypot(|g_01|, (g_00 - g_11) / 2) at phi_e
  double eps_slope = 0.0;   // 2 |<0|dH/dphi_e|1>| at phi_e = 0.5, GHz per flux quantum
  int coupling_sign = 1;    // sign of phi_beta along the same diabatic axis as eps
};

/// Reduction of qubit k, keeping n_levels eigenstates in `levels`/`g_matrix`.
QubitReduction two_level_reduce(const CircuitParams& p, int k, int n_levels = 4);

/// DickeParams fragment assembled from the two reductions.
dicke::DickeParams to_dicke(const QubitReduction& q1, const QubitReduction& q2, double omega_r,
                            int n_cut);

struct ConvergenceReport {
  RVector coarse;   // levels at n_charge - 2
  RVector fine;     // levels at n_charge
  double max_change = 0.0;
  double tolerance = 0.0;  // 1e-4 E_J
  bool converged = false;
};

ConvergenceReport check_charge_convergence(const CircuitParams& p, int k, int n_levels = 4);

/// Multi-level model built from two reductions:
///   sum Omega + omega_r a'a - (G1 - G2)(a' + a) - (2 / omega_r) G1 G2
CMatrix build_multilevel(const QubitReduction& q1, const QubitReduction& q2, double omega_r,
                         int n_cut);

/// Cross terms of the loop energy E_Lr (phi_b1 - phi_b2 - phi_r)^2, with the
/// resonator coordinate phi_r oriented against the loop. Returned as the
/// coefficients of {phi_b1 phi_r, phi_b2 phi_r, phi_b1 phi_b2}. Combined with
/// g = sqrt(omega_r E_Lr) <phi_beta> they give the -(g1 - g2)(a' + a) and
/// -(2 g1 g2 / omega_r) terms of the two-level model.
std::array<double, 3> interaction_coefficients(double e_lr);

}  // namespace usc::circuit
