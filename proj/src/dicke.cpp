#include "usc/dicke.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

#include "usc/error.hpp"

namespace usc::dicke {

namespace {

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

bool finite(double x) { return std::isfinite(x); }

// Shorthand for the three-slot embedding used by every builder.
struct Slots {
  std::array<int, 3> dims;
  explicit Slots(int n_cut) : dims{2, 2, n_cut} {}
  CMatrix q1(const CMatrix& op) const { return qop::embed(op, 0, dims); }
  CMatrix q2(const CMatrix& op) const { return qop::embed(op, 1, dims); }
  CMatrix res(const CMatrix& op) const { return qop::embed(op, 2, dims); }
};

}  // namespace

void DickeParams::validate() const {
  if (!(finite(omega_r) && finite(eps1) && finite(eps2) && finite(delta1) && finite(delta2) &&
        finite(g1) && finite(g2)))
    fail(ErrorCode::invalid_argument, "DickeParams: non-finite parameter");
  if (!(omega_r > 0.0))
    fail(ErrorCode::invalid_argument, "DickeParams: omega_r must be > 0");
  if (delta1 < 0.0 || delta2 < 0.0)
    fail(ErrorCode::invalid_argument, "DickeParams: delta1, delta2 must be >= 0");
  if (g1 < 0.0 || g2 < 0.0)
    fail(ErrorCode::invalid_argument, "DickeParams: g1, g2 must be >= 0");
  if (n_cut < 2)
    fail(ErrorCode::invalid_argument, "DickeParams: n_cut must be >= 2");
}

double qubit_frequency(double eps, double delta) {
  return sgn(eps) * std::hypot(eps, delta);
}

double mixing_angle(double eps, double delta) { return -std::atan2(eps, delta); }

double renormalized_gap(double delta, double g, double omega_r) {
  const double x = g / omega_r;
  return delta * std::exp(-2.0 * x * x);
}

MixedAngleParams mixed_angles(const DickeParams& p) {
  return {qubit_frequency(p.eps1, p.delta1), qubit_frequency(p.eps2, p.delta2),
          mixing_angle(p.eps1, p.delta1), mixing_angle(p.eps2, p.delta2)};
}

CMatrix build_h_flux(const DickeParams& p, Terms terms) {
  p.validate();
  const Slots s(p.n_cut);
  const CMatrix a = qop::annihilation(p.n_cut);
  const CMatrix x = s.res(a + a.adjoint());
  const CMatrix sz1 = s.q1(qop::pauli_z()), sz2 = s.q2(qop::pauli_z());

  CMatrix h = p.omega_r * s.res(a.adjoint() * a);
  h += 0.5 * p.eps1 * sz1 + 0.5 * p.delta1 * s.q1(qop::pauli_x());
  h += 0.5 * p.eps2 * sz2 + 0.5 * p.delta2 * s.q2(qop::pauli_x());
  h -= (p.g1 * sz1 - p.g2 * sz2) * x;
  if (terms.spin_spin) h -= (2.0 * p.g1 * p.g2 / p.omega_r) * sz1 * sz2;
  return h;
}

namespace {

CMatrix interaction_axis(double eps, double delta) {
  const double theta = mixing_angle(eps, delta);
  const double orientation = -sgn(eps);
  return orientation * (std::cos(theta) * qop::pauli_x() + std::sin(theta) * qop::pauli_z());
}

}  // namespace

CMatrix build_h_dicke(const DickeParams& p, Terms terms) {
  p.validate();
  const Slots s(p.n_cut);
  const MixedAngleParams m = mixed_angles(p);
  const CMatrix a = qop::annihilation(p.n_cut);
  const CMatrix x = s.res(a + a.adjoint());
  const CMatrix l1 = s.q1(interaction_axis(p.eps1, p.delta1));
  const CMatrix l2 = s.q2(interaction_axis(p.eps2, p.delta2));

  CMatrix h = p.omega_r * s.res(a.adjoint() * a);
  h += 0.5 * m.omega_q1 * s.q1(qop::pauli_z()) + 0.5 * m.omega_q2 * s.q2(qop::pauli_z());
  h -= (p.g1 * l1 - p.g2 * l2) * x;
  if (terms.spin_spin) h -= (2.0 * p.g1 * p.g2 / p.omega_r) * l1 * l2;
  return h;
}

CMatrix build_h_reference(const DickeParams& p) {
  p.validate();
  DickeParams bare = p;
  bare.delta1 = renormalized_gap(p.delta1, p.g1, p.omega_r);
  bare.delta2 = renormalized_gap(p.delta2, p.g2, p.omega_r);
  bare.g1 = 0.0;
  bare.g2 = 0.0;
  return build_h_dicke(bare);
}

CMatrix qubit_rotation(double eps, double delta) {
  // Columns of U' are the eigenvectors of eps/2 sz + delta/2 sx belonging to
  // +omega_q/2 and -omega_q/2; the phases are fixed so that U sz U' equals
  // the interaction axis used by build_h_dicke.
  const double chi = std::atan2(delta, eps);
  const double c = std::cos(0.5 * chi), s = std::sin(0.5 * chi);
  CMatrix u(2, 2);
  if (eps >= 0.0)
    u << c, s, -s, c;
  else
    u << -s, c, -c, -s;
  return u;
}

CMatrix qubit_frame_rotation(const DickeParams& p) {
  p.validate();
  return qop::kron(qop::kron(qubit_rotation(p.eps1, p.delta1), qubit_rotation(p.eps2, p.delta2)),
                   qop::identity(p.n_cut));
}

CMatrix parity_operator(int n_cut) {
  CMatrix photon_parity = CMatrix::Zero(n_cut, n_cut);
  for (int n = 0; n < n_cut; ++n) photon_parity(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return qop::kron(qop::kron(qop::pauli_z(), qop::pauli_z()), photon_parity);
}

RVector flux_energies(const DickeParams& p, int count, Terms terms) {
  p.validate();
  // Photon number as the slow index makes the matrix a band of half-width 4.
  const int n = p.n_cut, dim = 4 * n, kd = 4;
  RMatrix band = RMatrix::Zero(kd + 1, dim);
  auto set = [&](int i, int j, double v) { band(kd + i - j, j) = v; };  // i <= j
  const double j12 = terms.spin_spin ? 2.0 * p.g1 * p.g2 / p.omega_r : 0.0;
  for (int m = 0; m < n; ++m)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2) {
        const double z1 = s1 == 0 ? 1.0 : -1.0, z2 = s2 == 0 ? 1.0 : -1.0;
        const int i = 4 * m + 2 * s1 + s2;
        set(i, i, p.omega_r * m + 0.5 * p.eps1 * z1 + 0.5 * p.eps2 * z2 - j12 * z1 * z2);
        if (s1 == 0) set(i, i + 2, 0.5 * p.delta1);
        if (s2 == 0) set(i, i + 1, 0.5 * p.delta2);
        if (m + 1 < n) set(i, i + 4, -(p.g1 * z1 - p.g2 * z2) * std::sqrt(double(m + 1)));
      }
  return qop::banded_eigenvalues(band, count);
}

BareLabel BareLabel::parse(std::string_view text) {
  auto atom = [&](char c) {
    if (c == 'g') return Atom::g;
    if (c == 'e') return Atom::e;
    fail(ErrorCode::invalid_argument, "bare label '" + std::string(text) +
                                          "': expected g/e for each qubit");
  };
  if (text.size() < 3)
    fail(ErrorCode::invalid_argument,
         "bare label '" + std::string(text) + "': expected <q1><q2><photons>, e.g. gg1");
  BareLabel label;
  label.q1 = atom(text[0]);
  label.q2 = atom(text[1]);
  int photons = 0;
  for (char c : text.substr(2)) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(ErrorCode::invalid_argument,
           "bare label '" + std::string(text) + "': photon number is not an integer");
    photons = photons * 10 + (c - '0');
    if (photons > 1000000)
      fail(ErrorCode::invalid_argument, "bare label '" + std::string(text) + "': too many photons");
  }
  label.photons = photons;
  return label;
}

std::string BareLabel::str() const {
  std::string s;
  s += q1 == Atom::g ? 'g' : 'e';
  s += q2 == Atom::g ? 'g' : 'e';
  s += std::to_string(photons);
  return s;
}

int bare_index(const DickeParams& p, const BareLabel& label) {
  if (label.photons < 0 || label.photons >= p.n_cut)
    fail(ErrorCode::invalid_argument, "bare label " + label.str() +
                                          " lies outside the Fock cutoff n_cut=" +
                                          std::to_string(p.n_cut));
  // sz = +1 is slot 0. |g> is sz = +1 exactly when omega_q < 0.
  auto slot = [](Atom a, double eps, double delta) {
    const bool g_is_up = qubit_frequency(eps, delta) < 0.0;
    const bool up = (a == Atom::g) == g_is_up;
    return up ? 0 : 1;
  };
  const int s1 = slot(label.q1, p.eps1, p.delta1);
  const int s2 = slot(label.q2, p.eps2, p.delta2);
  return (2 * s1 + s2) * p.n_cut + label.photons;
}

}  // namespace usc::dicke
