#pragma once

// Dense complex operator algebra for small composite systems: tensor
// products, truncated bosonic and Pauli operators and a Hermitian
// eigensolver backed by LAPACK (?heevr / ?syevr).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace usc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

}  // namespace usc

namespace usc::qop {

CMatrix identity(int n);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Kronecker product, (a (x) b)[i*p + k, j*q + l] = a[i, j] * b[k, l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Truncated annihilation operator, a[n-1, n] = sqrt(n). Requires n_cut >= 2.
CMatrix annihilation(int n_cut);

/// a^dagger a on the truncated ladder.
CMatrix number_operator(int n_cut);

/// Places `op` on subsystem `slot` with identities elsewhere. Subsystems are
/// ordered as listed in `dims` (qubit 1, qubit 2, resonator throughout).
CMatrix embed(const CMatrix& op, std::size_t slot, std::span<const int> dims);

double max_abs(const CMatrix& m);

/// max |H - H^dagger| over all entries.
double max_asymmetry(const CMatrix& h);

/// True when every imaginary part is exactly zero.
bool is_real(const CMatrix& m);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // column k pairs with values[k]; empty if not requested
  // degenerate_with_next[k] is set when values[k+1] - values[k] < 1e-9.
  std::vector<bool> degenerate_with_next;

  bool has_degeneracy() const;
  /// max_k ||H v_k - lambda_k v_k||.
  double max_residual(const CMatrix& h) const;
  /// max |V^dagger V - I|.
  double orthonormality_error() const;
};

struct EigOptions {
  std::optional<int> count;  // lowest `count` pairs; all when empty
  bool vectors = true;
  double hermitian_rel_tol = 1e-12;
};

inline constexpr double kDegeneracyTol = 1e-9;

/// Rejects input whose asymmetry exceeds hermitian_rel_tol * max|H| with
/// ErrorCode::non_hermitian. Matrices with no imaginary part go through the
/// real symmetric driver.
EigenDecomposition hermitian_eig(const CMatrix& h, const EigOptions& options = {});

/// Lowest `count` eigenvalues of a real symmetric matrix (no checks beyond
/// squareness; this is the hot path of the fitter).
RVector symmetric_eigenvalues(const RMatrix& h, int count);

/// Lowest `count` eigenvalues of a real symmetric band matrix given in LAPACK
/// upper band storage: band(kd + i - j, j) = A(i, j), kd = band.rows() - 1.
RVector banded_eigenvalues(const RMatrix& band, int count);

}  // namespace usc::qop
