#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "compop/lft.hpp"

namespace compop {

/// Truncated Taylor series c_0 + c_1 z + ... + c_{N-1} z^{N-1}. The order N is
/// fixed at construction; no operation reads or writes past index N-1.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t order);
  explicit PowerSeries(std::vector<cplx> coeffs);
  PowerSeries(std::initializer_list<cplx> coeffs, std::size_t order);

  static PowerSeries constant(cplx value, std::size_t order);
  static PowerSeries monomial(std::size_t n, std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx operator[](std::size_t k) const { return coeffs_.at(k); }
  cplx& operator[](std::size_t k) { return coeffs_.at(k); }

  /// Same leading coefficients, truncated or zero-padded to `order`.
  PowerSeries resized(std::size_t order) const;
  /// Horner evaluation of the truncated polynomial.
  cplx evaluate(cplx z) const;

 private:
  std::vector<cplx> coeffs_;
};

PowerSeries add(const PowerSeries& p, const PowerSeries& q);
PowerSeries sub(const PowerSeries& p, const PowerSeries& q);
PowerSeries scalar_mul(cplx s, const PowerSeries& p);
/// Cauchy product truncated to the common order.
PowerSeries mul(const PowerSeries& p, const PowerSeries& q);
/// Term-wise derivative; the top coefficient of the result is 0 (unknown past truncation).
PowerSeries derivative(const PowerSeries& p);
/// Throws Error(ZeroConstantTerm) when |p_0| <= 1e-14.
PowerSeries reciprocal(const PowerSeries& p);
/// exp(p) from (k+1) f_{k+1} = sum_{j<=k} (j+1) p_{j+1} f_{k-j}.
PowerSeries exp_series(const PowerSeries& p);

/// Taylor coefficients of (a z + b)/(c z + d) about 0. Throws Error(PoleInsideDisk)
/// unless c = 0 or the pole -d/c lies strictly outside the closed unit disk.
PowerSeries lft_taylor(const LinearFractionalMap& f, std::size_t order);

/// (1 - z)^w.
PowerSeries binomial_power(cplx w, std::size_t order);
/// ((1 + z)/(1 - z))^w, from (1 - z^2) f' = 2 w f.
PowerSeries cayley_power(cplx w, std::size_t order);
/// exp(-t (1 + z)/(1 - z)); throws Error(NegativeParameter) for t < 0.
PowerSeries parabolic_eigenfunction(double t, std::size_t order);
/// (z - center)^k.
PowerSeries sigma_power(cplx center, std::size_t k, std::size_t order);

/// Taylor series of g o f truncated to `order`, by Horner's rule over all of g's
/// coefficients. g may (and for f(0) != 0 should) carry more terms than `order`:
/// every coefficient g_k with k >= order still feeds the low coefficients of the
/// result through powers of f. Throws Error(OrderMismatch) if g.order() < order.
PowerSeries compose_series(const PowerSeries& g, const LinearFractionalMap& f, std::size_t order);

/// In-place p <- p * f for a linear fractional f, O(N) per call.
void multiply_by_lft(std::vector<cplx>& p, const LinearFractionalMap& f);

}  // namespace compop
