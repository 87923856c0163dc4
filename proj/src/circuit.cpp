#include "usc/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "usc/error.hpp"

namespace usc::circuit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_qubit(const QubitCircuit& q, int k) {
  std::ostringstream msg;
  msg << "circuit: qubit " << k << ": ";
  auto bad = [&](const char* what) {
    msg << what;
    fail(ErrorCode::invalid_argument, msg.str());
  };
  if (!std::isfinite(q.e_j) || !(q.e_j > 0)) bad("e_j must be > 0");
  if (!std::isfinite(q.e_c) || !(q.e_c > 0)) bad("e_c must be > 0");
  if (!std::isfinite(q.alpha) || !(q.alpha > 0)) bad("alpha must be > 0");
  if (!std::isfinite(q.beta) || !(q.beta > 0)) bad("beta must be > 0");
  if (!std::isfinite(q.phi_e)) bad("phi_e must be finite");
}

// (phi (x) 1) v without forming the lifted operator; b is the slowest index.
CMatrix apply_phi_beta(int n_charge, const CMatrix& v) {
  const int d = 2 * n_charge + 1, rest = d * d;
  const CMatrix phi_t = phase_operator(n_charge).transpose();
  CMatrix out(v.rows(), v.cols());
  for (int j = 0; j < v.cols(); ++j) {
    Eigen::Map<const CMatrix> in(v.col(j).data(), rest, d);
    Eigen::Map<CMatrix>(out.col(j).data(), rest, d) = in * phi_t;
  }
  return out;
}

// dH/dphi_e applied to a vector: -i pi E_J alpha (T - T') v.
CVector apply_flux_derivative(const CircuitParams& p, int k, const CVector& v) {
  const QubitCircuit& q = p.qubit(k);
  const int d = 2 * p.n_charge + 1;
  const cplx coeff = cplx(0.0, -kPi * q.e_j * q.alpha) * std::polar(1.0, 2.0 * kPi * q.phi_e);
  auto index = [d](int b, int a, int c) { return (b * d + a) * d + c; };
  CVector out = CVector::Zero(v.size());
  for (int b = 1; b < d; ++b)
    for (int a = 1; a < d; ++a)
      for (int c = 1; c < d; ++c) {
        const int i = index(b, a, c), j = index(b - 1, a - 1, c - 1);
        out[j] += coeff * v[i];
        out[i] += std::conj(coeff) * v[j];
      }
  return out;
}

// phi_e - 0.5 folded into (-0.5, 0.5].
double flux_offset(double phi_e) {
  double x = phi_e - 0.5;
  x -= std::ceil(x - 0.5);
  return x;
}

}  // namespace

void CircuitParams::validate() const {
  check_qubit(qubits[0], 1);
  check_qubit(qubits[1], 2);
  if (!(e_lr > 0) || !std::isfinite(e_lr)) fail(ErrorCode::invalid_argument, "circuit: e_lr must be > 0");
  if (!(omega_r > 0) || !std::isfinite(omega_r))
    fail(ErrorCode::invalid_argument, "circuit: omega_r must be > 0");
  if (n_charge < 1) fail(ErrorCode::invalid_argument, "circuit: n_charge must be >= 1");
}

const QubitCircuit& CircuitParams::qubit(int k) const {
  if (k != 1 && k != 2) fail(ErrorCode::invalid_argument, "circuit: qubit index must be 1 or 2");
  return qubits[k - 1];
}

int CircuitParams::dimension() const {
  const int d = 2 * n_charge + 1;
  return d * d * d;
}

RMatrix mass_matrix(double alpha, double beta, double c_j) {
  if (!(alpha > 0) || !(beta > 0) || !(c_j > 0))
    fail(ErrorCode::invalid_argument, "mass_matrix: alpha, beta and c_j must be > 0");
  RMatrix m(3, 3);
  m << beta + alpha, alpha, alpha, alpha, 1 + alpha, alpha, alpha, alpha, 1 + alpha;
  return c_j * m;
}

CMatrix phase_operator(int n_charge) {
  if (n_charge < 1) fail(ErrorCode::invalid_argument, "phase_operator: n_charge must be >= 1");
  const int d = 2 * n_charge + 1;
  CMatrix phi = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      const int k = n - m;
      if (k != 0) phi(n, m) = cplx(0.0, (k % 2 == 0 ? 1.0 : -1.0) / k);
    }
  return phi;
}

CMatrix phase_squared(int n_charge) {
  if (n_charge < 1) fail(ErrorCode::invalid_argument, "phase_squared: n_charge must be >= 1");
  const int d = 2 * n_charge + 1;
  CMatrix phi2(d, d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      const int k = n - m;
      phi2(n, m) = k == 0 ? kPi * kPi / 3.0 : 2.0 * (k % 2 == 0 ? 1.0 : -1.0) / double(k * k);
    }
  return phi2;
}

CMatrix build_qubit_hamiltonian(const CircuitParams& p, int k) {
  p.validate();
  const QubitCircuit& q = p.qubit(k);
  const int nc = p.n_charge, d = 2 * nc + 1, dim = d * d * d;
  const RMatrix minv = mass_matrix(q.alpha, q.beta).inverse();
  const CMatrix phi2 = phase_squared(nc);
  const cplx twist = std::polar(1.0, 2.0 * kPi * q.phi_e);
  auto index = [d](int b, int a, int c) { return (b * d + a) * d + c; };

  CMatrix h = CMatrix::Zero(dim, dim);
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) {
        const int i = index(b, a, c);
        const Eigen::Vector3d n(b - nc, a - nc, c - nc);
        h(i, i) += 4.0 * q.e_c * n.dot(minv * n);
        for (int b2 = 0; b2 < d; ++b2) h(index(b2, a, c), i) += p.e_lr * phi2(b2, b);
        // cos phi = (S + S')/2 with S|n> = |n+1>
        if (b + 1 < d) {
          h(index(b + 1, a, c), i) -= 0.5 * q.e_j * q.beta;
          h(i, index(b + 1, a, c)) -= 0.5 * q.e_j * q.beta;
        }
        if (a + 1 < d) {
          h(index(b, a + 1, c), i) -= 0.5 * q.e_j;
          h(i, index(b, a + 1, c)) -= 0.5 * q.e_j;
        }
        if (c + 1 < d) {
          h(index(b, a, c + 1), i) -= 0.5 * q.e_j;
          h(i, index(b, a, c + 1)) -= 0.5 * q.e_j;
        }
        // alpha junction: T = e^{2 pi i phi_e} lowers all three charges
        if (b > 0 && a > 0 && c > 0) {
          const int j = index(b - 1, a - 1, c - 1);
          h(j, i) -= 0.5 * q.e_j * q.alpha * twist;
          h(i, j) -= 0.5 * q.e_j * q.alpha * std::conj(twist);
        }
      }
  return h;
}

CMatrix flux_derivative(const CircuitParams& p, int k) {
  p.validate();
  const QubitCircuit& q = p.qubit(k);
  const int nc = p.n_charge, d = 2 * nc + 1, dim = d * d * d;
  const cplx twist = std::polar(1.0, 2.0 * kPi * q.phi_e);
  auto index = [d](int b, int a, int c) { return (b * d + a) * d + c; };
  // d/dphi_e of -E_J alpha (T + T')/2 = -i pi E_J alpha (T - T')
  const cplx coeff = cplx(0.0, -kPi * q.e_j * q.alpha);
  CMatrix dh = CMatrix::Zero(dim, dim);
  for (int b = 1; b < d; ++b)
    for (int a = 1; a < d; ++a)
      for (int c = 1; c < d; ++c) {
        const int i = index(b, a, c), j = index(b - 1, a - 1, c - 1);
        dh(j, i) += coeff * twist;
        dh(i, j) += std::conj(coeff * twist);
      }
  return dh;
}

CMatrix phi_beta(const CircuitParams& p) {
  const int d = 2 * p.n_charge + 1;
  return qop::kron(phase_operator(p.n_charge), qop::identity(d * d));
}

QubitSpectrum solve_qubit(const CircuitParams& p, int k, int n_levels) {
  if (n_levels < 2) fail(ErrorCode::invalid_argument, "solve_qubit: need at least 2 levels");
  auto eig = qop::hermitian_eig(build_qubit_hamiltonian(p, k), {.count = n_levels});
  return {eig.values, std::move(eig.vectors)};
}

CMatrix coupling_elements(const CircuitParams& p, QubitSpectrum& spectrum) {
  CMatrix& v = spectrum.vectors;
  const CMatrix phi = apply_phi_beta(p.n_charge, v);
  const double scale = std::sqrt(p.omega_r * p.e_lr);
  // Fix phases so that <0|phi|j> is real and non-negative.
  for (int j = 1; j < v.cols(); ++j) {
    const cplx e = v.col(0).dot(phi.col(j));
    if (std::abs(e) > 1e-12) {
      const cplx phase = std::conj(e) / std::abs(e);
      v.col(j) *= phase;
    }
  }
  CMatrix g = scale * (v.adjoint() * apply_phi_beta(p.n_charge, v));
  return 0.5 * (g + g.adjoint());
}

QubitReduction two_level_reduce(const CircuitParams& p, int k, int n_levels) {
  if (n_levels < 2) fail(ErrorCode::invalid_argument, "two_level_reduce: need at least 2 levels");
  QubitReduction r;

  CircuitParams at_half = p;
  at_half.qubits[k - 1].phi_e = 0.5;
  QubitSpectrum sym = solve_qubit(at_half, k, n_levels);
  r.delta = sym.levels[1] - sym.levels[0];
  const cplx d01 =
      sym.vectors.col(0).dot(apply_flux_derivative(at_half, k, sym.vectors.col(1)));
  r.eps_slope = 2.0 * std::abs(d01);
  const cplx p01 = sym.vectors.col(0).dot(apply_phi_beta(p.n_charge, sym.vectors.col(1)).col(0));
  // Both operators are diagonal in the diabatic (current) basis; their
  // off-diagonal elements share a sign when they point the same way.
  r.coupling_sign = (std::conj(d01) * p01).real() >= 0.0 ? 1 : -1;
  r.eps = r.eps_slope * flux_offset(p.qubit(k).phi_e);

  QubitSpectrum op = flux_offset(p.qubit(k).phi_e) == 0.0 ? std::move(sym) : solve_qubit(p, k, n_levels);
  r.levels = op.levels.array() - op.levels[0];
  r.g_matrix = coupling_elements(p, op);
  const double g01 = std::abs(r.g_matrix(0, 1));
  const double gz = 0.5 * (r.g_matrix(0, 0).real() - r.g_matrix(1, 1).real());
  r.g = std::hypot(g01, gz);
  return r;
}

dicke::DickeParams to_dicke(const QubitReduction& q1, const QubitReduction& q2, double omega_r,
                            int n_cut) {
  dicke::DickeParams d;
  d.omega_r = omega_r;
  d.eps1 = q1.eps;
  d.eps2 = q2.eps;
  d.delta1 = q1.delta;
  d.delta2 = q2.delta;
  d.g1 = q1.g;
  d.g2 = q2.g;
  d.n_cut = n_cut;
  d.validate();
  return d;
}

ConvergenceReport check_charge_convergence(const CircuitParams& p, int k, int n_levels) {
  if (p.n_charge < 3)
    fail(ErrorCode::invalid_argument, "check_charge_convergence: n_charge must be >= 3");
  CircuitParams coarse = p;
  coarse.n_charge = p.n_charge - 2;
  ConvergenceReport r;
  r.coarse = qop::hermitian_eig(build_qubit_hamiltonian(coarse, k),
                                {.count = n_levels, .vectors = false}).values;
  r.fine = qop::hermitian_eig(build_qubit_hamiltonian(p, k), {.count = n_levels, .vectors = false})
               .values;
  r.max_change = (r.fine - r.coarse).cwiseAbs().maxCoeff();
  r.tolerance = 1e-4 * p.qubit(k).e_j;
  r.converged = r.max_change < r.tolerance;
  return r;
}

CMatrix build_multilevel(const QubitReduction& q1, const QubitReduction& q2, double omega_r,
                         int n_cut) {
  const int l1 = int(q1.levels.size()), l2 = int(q2.levels.size());
  if (q1.g_matrix.rows() != l1 || q2.g_matrix.rows() != l2)
    fail(ErrorCode::invalid_argument, "build_multilevel: level and coupling sizes differ");
  const std::array<int, 3> dims{l1, l2, n_cut};
  const CMatrix a = qop::annihilation(n_cut);
  const CMatrix x = qop::embed(a + a.adjoint(), 2, dims);
  const CMatrix o1 = q1.levels.cast<cplx>().asDiagonal();
  const CMatrix o2 = q2.levels.cast<cplx>().asDiagonal();
  const CMatrix g1 = qop::embed(q1.g_matrix, 0, dims);
  const CMatrix g2 = qop::embed(q2.g_matrix, 1, dims);
  return qop::embed(o1, 0, dims) + qop::embed(o2, 1, dims) +
         omega_r * qop::embed(qop::number_operator(n_cut), 2, dims) - (g1 - g2) * x -
         (2.0 / omega_r) * g1 * g2;
}

std::array<double, 3> interaction_coefficients(double e_lr) {
  // E_Lr (x1 - x2 - r)^2 = squares - 2 E_Lr x1 r + 2 E_Lr x2 r - 2 E_Lr x1 x2
  return {-2.0 * e_lr, 2.0 * e_lr, -2.0 * e_lr};
}

}  // namespace usc::circuit
