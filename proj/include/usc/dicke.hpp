#pragma once

// Two flux qubits sharing one LC mode. All energies are linear frequencies in
// GHz (h = 1); the resonator zero-point energy is dropped. Composite basis
// order is (qubit 1, qubit 2, resonator) with |s1 s2 n>, s = 0 for the
// sigma_z = +1 state.

#include <string>
#include <string_view>

#include "usc/qop.hpp"

namespace usc::dicke {

struct DickeParams {
  double omega_r = 0.0;  // resonator frequency
  double eps1 = 0.0;     // persistent-current energies (signed)
  double eps2 = 0.0;
  double delta1 = 0.0;   // tunnel gaps
  double delta2 = 0.0;
  double g1 = 0.0;       // qubit-resonator couplings
  double g2 = 0.0;
  int n_cut = 30;        // Fock truncation

  /// omega_r > 0, delta_k >= 0, g_k >= 0, n_cut >= 2, all finite.
  void validate() const;
  int dimension() const { return 4 * n_cut; }
};

inline constexpr int kDefaultFockCutoff = 30;

/// sgn(eps) * sqrt(eps^2 + delta^2), with sgn(0) = +1.
double qubit_frequency(double eps, double delta);

/// -arctan(eps / delta). delta = 0 gives the longitudinal limit -sgn(eps) pi/2.
double mixing_angle(double eps, double delta);

/// delta * exp(-2 (g / omega_r)^2), the gap of a polaron-dressed qubit.
double renormalized_gap(double delta, double g, double omega_r);

struct MixedAngleParams {
  double omega_q1 = 0.0;
  double omega_q2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

MixedAngleParams mixed_angles(const DickeParams& p);

struct Terms {
  bool spin_spin = true;  // -(2 g1 g2 / omega_r) coupling between the qubits
};

/// Flux (persistent-current) basis:
///   wr a'a + sum_k (eps_k/2 sz_k + delta_k/2 sx_k)
///   - (g1 sz1 - g2 sz2)(a' + a) - (2 g1 g2 / wr) sz1 sz2
CMatrix build_h_flux(const DickeParams& p, Terms terms = {});

/// Qubit eigenbasis (generalized Dicke form):
///   wr a'a + sum_k omega_qk/2 sz_k
///   - (g1 L1 - g2 L2)(a' + a) - (2 g1 g2 / wr) L1 L2,
/// L_k = o_k (cos theta_k sx_k + sin theta_k sz_k), o_k = -sgn(eps_k).
/// The orientation o_k makes L_k the image of the flux-basis sz_k under
/// qubit_frame_rotation, so both builders share one spectrum for every sign
/// combination of eps1, eps2. o_k = 1 whenever eps_k < 0.
CMatrix build_h_dicke(const DickeParams& p, Terms terms = {});

/// Non-interacting dressed reference: build_h_dicke with g1 = g2 = 0 and
/// delta_k -> renormalized_gap(delta_k, g_k, omega_r).
CMatrix build_h_reference(const DickeParams& p);

/// 2x2 unitary U with U (eps/2 sz + delta/2 sx) U' = qubit_frequency/2 sz.
CMatrix qubit_rotation(double eps, double delta);

/// U1 (x) U2 (x) 1, mapping build_h_flux onto build_h_dicke.
CMatrix qubit_frame_rotation(const DickeParams& p);

/// sz1 sz2 exp(i pi a'a).
CMatrix parity_operator(int n_cut);

/// Lowest `count` eigenvalues of build_h_flux through the real symmetric
/// driver; used on hot paths (fits, crossing searches).
RVector flux_energies(const DickeParams& p, int count, Terms terms = {});

enum class Atom { g, e };

/// A bare product state |q1 q2 n> of the non-interacting part of the Dicke
/// form. |g> is the lower-energy eigenstate of omega_qk/2 sz_k, so for
/// omega_qk < 0 it is the sz = +1 state.
struct BareLabel {
  Atom q1 = Atom::g;
  Atom q2 = Atom::g;
  int photons = 0;

  /// Parses "gg1", "eg0", "ee12", ...
  static BareLabel parse(std::string_view text);
  std::string str() const;
};

/// Index of a bare state in the composite basis of build_h_dicke(p).
int bare_index(const DickeParams& p, const BareLabel& label);

}  // namespace usc::dicke
