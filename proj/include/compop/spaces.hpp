#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "compop/series.hpp"

namespace compop {

enum class SpaceKind { Hardy, Bergman, Fock };

const char* to_string(SpaceKind kind) noexcept;  // "hardy" | "bergman" | "fock"

/// H^2(D), the Bergman space with normalized area measure, or F^2_alpha.
/// All three are handled through the norms of the monomials, which are
/// pairwise orthogonal in each of them.
class SpaceSpec {
 public:
  static SpaceSpec hardy() { return SpaceSpec(SpaceKind::Hardy, 0.0); }
  static SpaceSpec bergman() { return SpaceSpec(SpaceKind::Bergman, 0.0); }
  /// Throws Error(ParamOutOfRange) unless alpha > 0.
  static SpaceSpec fock(double alpha);
  static SpaceSpec make(SpaceKind kind, double alpha = 1.0);

  SpaceKind kind() const noexcept { return kind_; }
  /// Fock parameter; 0 for the disk spaces.
  double alpha() const noexcept { return alpha_; }
  bool is_disk_space() const noexcept { return kind_ != SpaceKind::Fock; }
  std::string describe() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  SpaceSpec(SpaceKind kind, double alpha) : kind_(kind), alpha_(alpha) {}
  SpaceKind kind_;
  double alpha_;
};

/// ||z^n||: 1 (Hardy), 1/sqrt(n+1) (Bergman), sqrt(n!/alpha^n) (Fock).
double monomial_norm(const SpaceSpec& space, std::size_t n);
/// ||z^i|| / ||z^j||, evaluated without forming either norm (Fock norms overflow
/// near n = 300 for alpha = 1).
double norm_ratio(const SpaceSpec& space, std::size_t i, std::size_t j);

/// Coordinates in the orthonormal basis e_k = z^k/||z^k||: p_k ||z^k||.
std::vector<cplx> coeffs_to_coordinates(const PowerSeries& p, const SpaceSpec& space);
PowerSeries coordinates_to_coeffs(const std::vector<cplx>& coords, const SpaceSpec& space);

cplx inner_product(const PowerSeries& p, const PowerSeries& q, const SpaceSpec& space);
double norm(const PowerSeries& p, const SpaceSpec& space);

/// Taylor series in z of K(z, w) = sum_k conj(w)^k z^k / ||z^k||^2, so that
/// <p, K(., w)> = p(w). Throws Error(PointOutsideDomain) for |w| >= 1 on the disk spaces.
PowerSeries reproducing_kernel_coeffs(const SpaceSpec& space, cplx w, std::size_t order);

}  // namespace compop
