#include "usc/qop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "usc/error.hpp"

namespace usc::qop {

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index p = b.rows(), q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

CMatrix annihilation(int n_cut) {
  if (n_cut < 2)
    fail(ErrorCode::invalid_argument,
         "annihilation: n_cut must be >= 2, got " + std::to_string(n_cut));
  CMatrix a = CMatrix::Zero(n_cut, n_cut);
  for (int n = 1; n < n_cut; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

CMatrix number_operator(int n_cut) {
  if (n_cut < 2)
    fail(ErrorCode::invalid_argument,
         "number_operator: n_cut must be >= 2, got " + std::to_string(n_cut));
  CMatrix n = CMatrix::Zero(n_cut, n_cut);
  for (int k = 0; k < n_cut; ++k) n(k, k) = double(k);
  return n;
}

CMatrix embed(const CMatrix& op, std::size_t slot, std::span<const int> dims) {
  if (slot >= dims.size())
    fail(ErrorCode::invalid_argument, "embed: slot " + std::to_string(slot) +
                                          " outside " + std::to_string(dims.size()) +
                                          " subsystems");
  if (op.rows() != dims[slot] || op.cols() != dims[slot])
    fail(ErrorCode::invalid_argument,
         "embed: operator is " + std::to_string(op.rows()) + "x" +
             std::to_string(op.cols()) + " but subsystem " + std::to_string(slot) +
             " has dimension " + std::to_string(dims[slot]));
  int before = 1, after = 1;
  for (std::size_t k = 0; k < slot; ++k) before *= dims[k];
  for (std::size_t k = slot + 1; k < dims.size(); ++k) after *= dims[k];
  CMatrix out = op;
  if (after > 1) out = kron(out, identity(after));
  if (before > 1) out = kron(identity(before), out);
  return out;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_asymmetry(const CMatrix& h) {
  if (h.rows() != h.cols())
    fail(ErrorCode::invalid_argument, "max_asymmetry: matrix is not square");
  return max_abs(h - h.adjoint());
}

bool is_real(const CMatrix& m) {
  return (m.imag().array() == 0.0).all();
}

bool EigenDecomposition::has_degeneracy() const {
  return std::find(degenerate_with_next.begin(), degenerate_with_next.end(), true) !=
         degenerate_with_next.end();
}

double EigenDecomposition::max_residual(const CMatrix& h) const {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const CVector r = h * vectors.col(k) - values[k] * vectors.col(k);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double EigenDecomposition::orthonormality_error() const {
  if (vectors.cols() == 0) return 0.0;
  const CMatrix g = vectors.adjoint() * vectors;
  return max_abs(g - CMatrix::Identity(g.rows(), g.cols()));
}

namespace {

std::vector<bool> degeneracy_flags(const RVector& values) {
  std::vector<bool> flags(values.size(), false);
  for (Eigen::Index k = 0; k + 1 < values.size(); ++k)
    flags[k] = values[k + 1] - values[k] < kDegeneracyTol;
  return flags;
}

void check_info(lapack_int info, const char* routine) {
  if (info != 0)
    fail(ErrorCode::not_converged,
         std::string(routine) + " failed with info=" + std::to_string(info));
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& h, const EigOptions& options) {
  if (h.rows() != h.cols() || h.rows() == 0)
    fail(ErrorCode::invalid_argument, "hermitian_eig: matrix must be square and non-empty");
  const lapack_int n = lapack_int(h.rows());
  const double scale = max_abs(h);
  const double asym = max_asymmetry(h);
  if (asym > options.hermitian_rel_tol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "hermitian_eig: matrix is not Hermitian, max|H - H^dagger| = " << asym
        << " (max|H| = " << scale << ")";
    fail(ErrorCode::non_hermitian, msg.str());
  }
  const lapack_int count = options.count ? std::clamp<lapack_int>(*options.count, 1, n) : n;
  const char range = count == n ? 'A' : 'I';
  const char jobz = options.vectors ? 'V' : 'N';
  std::vector<lapack_int> support(2 * std::size_t(n));
  lapack_int found = 0;

  EigenDecomposition out;
  RVector w(n);
  if (is_real(h)) {
    RMatrix a = h.real();
    RMatrix z(n, options.vectors ? count : 1);
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, jobz, range, 'U', n, a.data(), n,
                                           0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(),
                                           n, support.data());
    check_info(info, "dsyevr");
    if (options.vectors) out.vectors = z.leftCols(found).cast<cplx>();
  } else {
    CMatrix a = h;
    CMatrix z(n, options.vectors ? count : 1);
    const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, jobz, range, 'U', n, a.data(), n,
                                           0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(),
                                           n, support.data());
    check_info(info, "zheevr");
    if (options.vectors) out.vectors = z.leftCols(found);
  }
  out.values = w.head(found);
  out.degenerate_with_next = degeneracy_flags(out.values);
  return out;
}

RVector symmetric_eigenvalues(const RMatrix& h, int count) {
  if (h.rows() != h.cols() || h.rows() == 0)
    fail(ErrorCode::invalid_argument, "symmetric_eigenvalues: matrix must be square");
  const lapack_int n = lapack_int(h.rows());
  const lapack_int m = std::clamp<lapack_int>(count, 1, n);
  RMatrix a = h;
  RVector w(n);
  double dummy = 0.0;
  std::vector<lapack_int> support(2 * std::size_t(n));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', m == n ? 'A' : 'I', 'U', n, a.data(), n, 0.0, 0.0, 1,
                     m, 0.0, &found, w.data(), &dummy, 1, support.data());
  check_info(info, "dsyevr");
  return w.head(found);
}

RVector banded_eigenvalues(const RMatrix& band, int count) {
  const lapack_int kd = lapack_int(band.rows()) - 1;
  const lapack_int n = lapack_int(band.cols());
  if (kd < 0 || n == 0) fail(ErrorCode::invalid_argument, "banded_eigenvalues: empty band");
  const lapack_int m = std::clamp<lapack_int>(count, 1, n);
  // Band -> tridiagonal, then bisection for only the requested values.
  RMatrix ab = band;
  std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
  double q = 0.0;
  check_info(LAPACKE_dsbtrd(LAPACK_COL_MAJOR, 'N', 'U', n, kd, ab.data(), kd + 1, d.data(),
                            e.data(), &q, 1),
             "dsbtrd");
  RVector w(n);
  std::vector<lapack_int> block(static_cast<std::size_t>(n)), split(static_cast<std::size_t>(n));
  lapack_int found = 0, n_split = 0;
  check_info(LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, 1, m, 0.0, d.data(),
                            e.data(), &found, &n_split, w.data(), block.data(), split.data()),
             "dstebz");
  return w.head(found);
}

}  // namespace usc::qop
