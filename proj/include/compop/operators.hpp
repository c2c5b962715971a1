#pragma once

#include <cstddef>
#include <string>

#include "compop/linalg.hpp"
#include "compop/lft.hpp"
#include "compop/series.hpp"
#include "compop/spaces.hpp"

namespace compop {

/// N x N truncation of an operator in the orthonormal monomial basis e_n of a
/// space: entry (i, j) = <A e_j, e_i>. Immutable once built.
class OperatorMatrix {
 public:
  /// Throws Error(DimensionMismatch) for a non-square matrix.
  OperatorMatrix(SpaceSpec space, Matrix entries, std::string label);

  const SpaceSpec& space() const noexcept { return space_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const noexcept { return entries_; }
  const std::string& label() const noexcept { return label_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  SpaceSpec space_;
  Matrix entries_;
  std::string label_;
};

/// C_phi f = f o phi. Column j holds the coordinates of phi^j / ||z^j||.
/// Disk spaces need a self-map of the disk with its pole off the closed disk;
/// the Fock space needs an affine symbol with |a| < 1, or |a| = 1 and b = 0.
/// Otherwise throws Error(SymbolNotAdmissible).
OperatorMatrix composition_matrix(const LinearFractionalMap& phi, const SpaceSpec& space,
                                  std::size_t order);

/// M_b f = b f; lower triangular with entry (i, j) = b_{i-j} ||z^i|| / ||z^j||.
OperatorMatrix multiplication_matrix(const PowerSeries& b, const SpaceSpec& space,
                                     std::size_t order);

OperatorMatrix identity_matrix(const SpaceSpec& space, std::size_t order);

/// e_n -> e_{n-k} for n >= k, e_n -> 0 otherwise. Needs 1 <= k < N (else BadShift).
OperatorMatrix basis_shift_matrix(std::size_t k, const SpaceSpec& space, std::size_t order);

/// Backward shift by k in powers of sigma = z - c: sigma^n -> sigma^{n-k}
/// (sigma^n -> 0 for n < k). Built as S^k with S f = (f - f(c)) / (z - c),
/// i.e. S z^n = sum_{i<n} c^{n-1-i} z^i. Throws CenterOutsideDisk for |c| >= 1.
OperatorMatrix sigma_shift_matrix(cplx center, std::size_t k, const SpaceSpec& space,
                                  std::size_t order);

/// D f = f' / (2 alpha i) on the Fock space; entry (n-1, n) = sqrt(n alpha) / (2 alpha i).
OperatorMatrix quasi_diff_matrix(const SpaceSpec& space, std::size_t order);
/// X f = z f on the Fock space; entry (n+1, n) = sqrt((n+1)/alpha). The image of
/// the last basis vector falls outside the truncation.
OperatorMatrix quasi_mult_matrix(const SpaceSpec& space, std::size_t order);
/// X - tau I.
OperatorMatrix shifted_quasi_mult(const SpaceSpec& space, cplx tau, std::size_t order);

OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix direct_sum(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix power(const OperatorMatrix& a, std::size_t k);
OperatorMatrix scaled(cplx s, const OperatorMatrix& a);
/// Leading `size` x `size` block.
OperatorMatrix leading_block(const OperatorMatrix& a, std::size_t size);

/// Largest singular value of the truncation.
double op_norm(const OperatorMatrix& a);

/// A applied to a series of the same order, through coordinates.
PowerSeries apply_to_series(const OperatorMatrix& a, const PowerSeries& p);

}  // namespace compop
