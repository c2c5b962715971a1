#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace compop {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense SVD up to this size, power iteration on A^* A above it.
inline constexpr Eigen::Index kDenseNormLimit = 256;

/// Largest singular value.
double spectral_norm(const Matrix& a);
/// Same, but above kDenseNormLimit the power iteration stops once successive
/// iterates agree to rel_tol. The result never exceeds the true norm.
double spectral_norm_estimate(const Matrix& a, double rel_tol);
/// Smallest singular value (0 for an empty matrix).
double smallest_singular_value(const Matrix& a);

/// Exactly upper triangular (every entry below the diagonal is 0.0).
bool is_upper_triangular(const Matrix& a);

/// Eigenvalues. An exactly upper-triangular input returns its diagonal, so the
/// spectrum of a degree-preserving truncation stays exact; anything else goes
/// through the complex Schur decomposition.
std::vector<cplx> eigenvalues(const Matrix& a);

struct EigenPair {
  cplx value;
  Vector vector;  // unit 2-norm
};
std::vector<EigenPair> eigenpairs(const Matrix& a);

/// Complex Schur form a = Q T Q^*.
struct SchurForm {
  Matrix q;
  Matrix t;
};
SchurForm schur(const Matrix& a);

}  // namespace compop
