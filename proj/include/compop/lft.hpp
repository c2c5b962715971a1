#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "compop/error.hpp"

namespace compop {

using cplx = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtendedComplex {
 public:
  ExtendedComplex(cplx z) : value_(z) {}  // NOLINT(google-explicit-constructor)
  ExtendedComplex(double x) : value_(cplx(x, 0.0)) {}  // NOLINT
  static ExtendedComplex infinity() { return ExtendedComplex(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws std::bad_optional_access for the point at infinity.
  cplx value() const { return value_.value(); }

  friend bool operator==(const ExtendedComplex&, const ExtendedComplex&) = default;

 private:
  ExtendedComplex() = default;
  std::optional<cplx> value_;
};

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class LinearFractionalMap {
 public:
  /// Throws Error(DegenerateMap) when |ad - bc| <= 1e-12 max(|a|,|b|,|c|,|d|)^2.
  LinearFractionalMap(cplx a, cplx b, cplx c, cplx d);

  static LinearFractionalMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx c() const noexcept { return c_; }
  cplx d() const noexcept { return d_; }

  cplx determinant() const noexcept { return a_ * d_ - b_ * c_; }
  /// Largest coefficient modulus; the reference scale for relative tolerances.
  double scale() const noexcept;

  ExtendedComplex operator()(const ExtendedComplex& z) const;
  /// phi'(z) = (ad - bc) / (cz + d)^2 at a finite, non-pole point.
  cplx derivative(cplx z) const;

  /// True when c vanishes relative to the coefficient scale.
  bool is_affine() const noexcept;
  /// Same map rescaled so that ad - bc = 1 (principal square root).
  LinearFractionalMap normalized() const;

 private:
  cplx a_, b_, c_, d_;
};

ExtendedComplex apply(const LinearFractionalMap& f, const ExtendedComplex& z);
/// (f o g)(z) = f(g(z)).
LinearFractionalMap compose(const LinearFractionalMap& f, const LinearFractionalMap& g);
LinearFractionalMap inverse(const LinearFractionalMap& f);

/// Proportional coefficient vectors, compared after normalization.
bool equivalent(const LinearFractionalMap& f, const LinearFractionalMap& g,
                double tol = 1e-10);
bool is_identity(const LinearFractionalMap& f, double tol = 1e-12);

/// Roots of c z^2 + (d - a) z - b = 0 on the sphere; a double root is returned once.
/// Throws Error(IdentityMap) for the identity.
std::vector<ExtendedComplex> fixed_points(const LinearFractionalMap& f);

/// Multiplier of f at a fixed point. At infinity this is the derivative in the
/// chart 1/z, which for affine f(z) = (a/d) z + b/d equals d/a.
cplx multiplier_at(const LinearFractionalMap& f, const ExtendedComplex& p);

enum class LftKind {
  Identity,
  EllipticAutomorphism,
  ParabolicAutomorphism,
  ParabolicNonAutomorphism,
  HyperbolicAutomorphism,
  HNA1,
  HNA2,
  HNA3,
  Loxodromic,
  NotSelfMap,
};

const char* to_string(LftKind kind) noexcept;
std::optional<LftKind> lft_kind_from_string(const std::string& name);

struct LftClass {
  LftKind kind = LftKind::Identity;
  /// Derivative at the attracting (designated) fixed point; 1 for parabolic maps.
  cplx multiplier{1.0, 0.0};
  /// Attracting fixed point first when there are two.
  std::vector<ExtendedComplex> fixed_points;
};

inline constexpr int kDefaultBoundarySamples = 720;
inline constexpr double kClassifyTolerance = 1e-9;

/// Pole -d/c outside the open disk and max |f| over `samples` boundary points
/// at most 1 + 1e-10.
bool is_self_map_of_disk(const LinearFractionalMap& f,
                         int samples = kDefaultBoundarySamples);
bool is_automorphism_of_disk(const LinearFractionalMap& f,
                             int samples = kDefaultBoundarySamples);
/// C_f is bounded on the Fock space iff f(z) = a z + b with |a| < 1, or |a| = 1 and b = 0.
bool is_fock_symbol(const LinearFractionalMap& f);

LftClass classify(const LinearFractionalMap& f, double tol = kClassifyTolerance);

/// Parameters of the standard forms. Only the fields a class reads are used:
///   EllipticAutomorphism      w            -> w z                 (|w| = 1, w != 1)
///   HyperbolicAutomorphism    r            -> (z + r)/(1 + r z)   (0 < r < 1)
///   HNA1                      r            -> r z + (1 - r)       (0 < r < 1)
///   ParabolicAutomorphism     a            -> ((2-a) z + a)/(-a z + 2 + a)   (Re a = 0, a != 0)
///   HNA3 / Loxodromic         a, center    -> a (z - center) + center
///                                            (|a| + |1 - a||center| <= 1; HNA3 needs a in (0,1),
///                                             Loxodromic needs a not real-positive)
///   Identity                  (none)
struct StandardParams {
  cplx w{1.0, 0.0};
  double r = 0.5;
  cplx a{0.0, 0.0};
  cplx center{0.0, 0.0};
};

/// Throws Error(ParamOutOfRange) outside the class's range and Error(Unresolved)
/// for classes without a standard form here (PNA, HNA2, NotSelfMap).
LinearFractionalMap standard_form(LftKind kind, const StandardParams& params);

}  // namespace compop
