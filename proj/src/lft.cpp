#include "compop/lft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace compop {

namespace {

constexpr double kAffineTol = 1e-12;
constexpr double kSelfMapSlack = 1e-10;

double max_abs4(cplx a, cplx b, cplx c, cplx d) {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

// |p| with infinity ordered last.
double sphere_modulus(const ExtendedComplex& p) {
  return p.is_infinite() ? std::numeric_limits<double>::infinity() : std::abs(p.value());
}

}  // namespace

LinearFractionalMap::LinearFractionalMap(cplx a, cplx b, cplx c, cplx d)
    : a_(a), b_(b), c_(c), d_(d) {
  const double s = max_abs4(a, b, c, d);
  if (!(std::abs(a * d - b * c) > 1e-12 * s * s)) {
    throw Error(ErrorCode::DegenerateMap, "linear fractional map has ad - bc = 0");
  }
}

double LinearFractionalMap::scale() const noexcept { return max_abs4(a_, b_, c_, d_); }

bool LinearFractionalMap::is_affine() const noexcept {
  return std::abs(c_) <= kAffineTol * scale();
}

LinearFractionalMap LinearFractionalMap::normalized() const {
  const cplx s = std::sqrt(determinant());
  return {a_ / s, b_ / s, c_ / s, d_ / s};
}

ExtendedComplex LinearFractionalMap::operator()(const ExtendedComplex& z) const {
  if (z.is_infinite()) {
    if (is_affine()) return ExtendedComplex::infinity();
    return a_ / c_;
  }
  const cplx x = z.value();
  const cplx den = c_ * x + d_;
  if (std::abs(den) <= 1e-15 * (std::abs(c_) * std::abs(x) + std::abs(d_))) {
    return ExtendedComplex::infinity();
  }
  return (a_ * x + b_) / den;
}

cplx LinearFractionalMap::derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  return determinant() / (den * den);
}

ExtendedComplex apply(const LinearFractionalMap& f, const ExtendedComplex& z) { return f(z); }

LinearFractionalMap compose(const LinearFractionalMap& f, const LinearFractionalMap& g) {
  return {f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
          f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d()};
}

LinearFractionalMap inverse(const LinearFractionalMap& f) {
  return {f.d(), -f.b(), -f.c(), f.a()};
}

bool equivalent(const LinearFractionalMap& f, const LinearFractionalMap& g, double tol) {
  const cplx u[4] = {f.a(), f.b(), f.c(), f.d()};
  const cplx v[4] = {g.a(), g.b(), g.c(), g.d()};
  cplx uv = 0.0;
  double uu = 0.0, vv = 0.0;
  for (int i = 0; i < 4; ++i) {
    uv += std::conj(u[i]) * v[i];
    uu += std::norm(u[i]);
    vv += std::norm(v[i]);
  }
  const cplx mu = uv / uu;
  double resid = 0.0;
  for (int i = 0; i < 4; ++i) resid += std::norm(v[i] - mu * u[i]);
  return std::sqrt(resid) <= tol * std::sqrt(vv);
}

bool is_identity(const LinearFractionalMap& f, double tol) {
  const double s = f.scale();
  return std::abs(f.b()) <= tol * s && std::abs(f.c()) <= tol * s &&
         std::abs(f.a() - f.d()) <= tol * s;
}

namespace {

std::vector<ExtendedComplex> fixed_points_impl(const LinearFractionalMap& f, double tol) {
  if (is_identity(f)) {
    throw Error(ErrorCode::IdentityMap, "every point is fixed by the identity map");
  }
  const LinearFractionalMap g = f.normalized();
  const cplx trace = g.a() + g.d();
  const cplx disc = trace * trace - 4.0;  // (d-a)^2 + 4bc with ad - bc = 1
  const bool double_root = std::abs(disc) <= tol * std::max(1.0, std::norm(trace));

  if (g.is_affine()) {
    if (double_root) return {ExtendedComplex::infinity()};
    return {g.b() / (g.d() - g.a()), ExtendedComplex::infinity()};
  }
  const cplx B = g.d() - g.a();
  if (double_root) return {-B / (2.0 * g.c())};
  cplx s = std::sqrt(disc);
  if (std::real(std::conj(B) * s) < 0.0) s = -s;
  const cplx q = -0.5 * (B + s);
  return {q / g.c(), -g.b() / q};
}

}  // namespace

std::vector<ExtendedComplex> fixed_points(const LinearFractionalMap& f) {
  return fixed_points_impl(f, kClassifyTolerance);
}

cplx multiplier_at(const LinearFractionalMap& f, const ExtendedComplex& p) {
  if (p.is_infinite()) return f.d() / f.a();
  return f.derivative(p.value());
}

bool is_self_map_of_disk(const LinearFractionalMap& f, int samples) {
  if (!f.is_affine() && std::abs(f.d() / f.c()) <= 1.0 + 1e-12) return false;
  samples = std::max(samples, 3);
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / samples;
    const ExtendedComplex w = f(std::polar(1.0, theta));
    if (w.is_infinite() || std::abs(w.value()) > 1.0 + kSelfMapSlack) return false;
  }
  return true;
}

bool is_automorphism_of_disk(const LinearFractionalMap& f, int samples) {
  return is_self_map_of_disk(f, samples) && is_self_map_of_disk(inverse(f), samples);
}

bool is_fock_symbol(const LinearFractionalMap& f) {
  if (!f.is_affine()) return false;
  const cplx a = f.a() / f.d();
  const cplx b = f.b() / f.d();
  if (std::abs(a) < 1.0 - 1e-12) return true;
  return std::abs(std::abs(a) - 1.0) <= 1e-12 && std::abs(b) <= 1e-12;
}

LftClass classify(const LinearFractionalMap& f, double tol) {
  LftClass out;
  if (is_identity(f)) {
    out.kind = LftKind::Identity;
    return out;
  }
  out.fixed_points = fixed_points_impl(f, tol);
  const bool self_map = is_self_map_of_disk(f);
  const bool automorphism = self_map && is_self_map_of_disk(inverse(f));

  if (out.fixed_points.size() == 1) {
    out.multiplier = 1.0;
    if (!self_map) {
      out.kind = LftKind::NotSelfMap;
    } else {
      out.kind = automorphism ? LftKind::ParabolicAutomorphism : LftKind::ParabolicNonAutomorphism;
    }
    return out;
  }

  cplx m0 = multiplier_at(f, out.fixed_points[0]);
  cplx m1 = multiplier_at(f, out.fixed_points[1]);
  const double gap = std::abs(m0) - std::abs(m1);
  bool swap = gap > tol;
  if (std::abs(gap) <= tol) {
    swap = sphere_modulus(out.fixed_points[1]) < sphere_modulus(out.fixed_points[0]);
  }
  if (swap) {
    std::swap(out.fixed_points[0], out.fixed_points[1]);
    std::swap(m0, m1);
  }
  out.multiplier = m0;
  if (!self_map) {
    out.kind = LftKind::NotSelfMap;
    return out;
  }

  const ExtendedComplex& attracting = out.fixed_points[0];
  const ExtendedComplex& repelling = out.fixed_points[1];
  const double lam_abs = std::abs(m0);
  if (std::abs(lam_abs - 1.0) <= tol) {
    out.kind = LftKind::EllipticAutomorphism;
    return out;
  }
  const bool real_positive = std::abs(m0.imag()) <= tol * lam_abs && m0.real() > 0.0;
  const double att_mod = sphere_modulus(attracting);
  if (real_positive && m0.real() < 1.0) {
    if (automorphism) {
      out.kind = LftKind::HyperbolicAutomorphism;
    } else if (std::abs(att_mod - 1.0) <= tol) {
      out.kind = sphere_modulus(repelling) > 1.0 + tol ? LftKind::HNA1 : LftKind::HNA2;
    } else {
      out.kind = LftKind::HNA3;
    }
    return out;
  }
  out.kind = LftKind::Loxodromic;
  return out;
}

const char* to_string(LftKind kind) noexcept {
  switch (kind) {
    case LftKind::Identity: return "Identity";
    case LftKind::EllipticAutomorphism: return "EllipticAutomorphism";
    case LftKind::ParabolicAutomorphism: return "ParabolicAutomorphism";
    case LftKind::ParabolicNonAutomorphism: return "ParabolicNonAutomorphism";
    case LftKind::HyperbolicAutomorphism: return "HyperbolicAutomorphism";
    case LftKind::HNA1: return "HNA1";
    case LftKind::HNA2: return "HNA2";
    case LftKind::HNA3: return "HNA3";
    case LftKind::Loxodromic: return "Loxodromic";
    case LftKind::NotSelfMap: return "NotSelfMap";
  }
  return "Unknown";
}

std::optional<LftKind> lft_kind_from_string(const std::string& name) {
  static constexpr LftKind all[] = {
      LftKind::Identity,    LftKind::EllipticAutomorphism,     LftKind::ParabolicAutomorphism,
      LftKind::ParabolicNonAutomorphism, LftKind::HyperbolicAutomorphism, LftKind::HNA1,
      LftKind::HNA2,        LftKind::HNA3,                     LftKind::Loxodromic,
      LftKind::NotSelfMap};
  for (LftKind k : all) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

LinearFractionalMap standard_form(LftKind kind, const StandardParams& p) {
  auto out_of_range = [](const char* what) {
    return Error(ErrorCode::ParamOutOfRange, what);
  };
  switch (kind) {
    case LftKind::Identity:
      return LinearFractionalMap::identity();
    case LftKind::EllipticAutomorphism:
      if (std::abs(std::abs(p.w) - 1.0) > 1e-12 || std::abs(p.w - 1.0) <= 1e-12) {
        throw out_of_range("elliptic standard form needs |w| = 1, w != 1");
      }
      return {p.w, 0.0, 0.0, 1.0};
    case LftKind::HyperbolicAutomorphism:
      if (!(p.r > 0.0 && p.r < 1.0)) throw out_of_range("hyperbolic automorphism needs 0 < r < 1");
      return {1.0, p.r, p.r, 1.0};
    case LftKind::HNA1:
      if (!(p.r > 0.0 && p.r < 1.0)) throw out_of_range("HNA1 needs 0 < r < 1");
      return {p.r, 1.0 - p.r, 0.0, 1.0};
    case LftKind::ParabolicAutomorphism:
      if (std::abs(p.a.real()) > 1e-12 || std::abs(p.a) <= 1e-12) {
        throw out_of_range("parabolic automorphism needs Re(a) = 0, a != 0");
      }
      return {2.0 - p.a, p.a, -p.a, 2.0 + p.a};
    case LftKind::HNA3:
    case LftKind::Loxodromic: {
      const double a_abs = std::abs(p.a);
      if (!(a_abs > 0.0 && a_abs < 1.0) ||
          a_abs + std::abs(1.0 - p.a) * std::abs(p.center) > 1.0 + 1e-12) {
        throw out_of_range("interior fixed point form needs 0 < |a| < 1 and |a| + |1-a||c| <= 1");
      }
      const bool real_positive = std::abs(p.a.imag()) <= 1e-12 && p.a.real() > 0.0;
      if (kind == LftKind::HNA3 && !real_positive) throw out_of_range("HNA3 needs a in (0, 1)");
      if (kind == LftKind::Loxodromic && real_positive) {
        throw out_of_range("loxodromic form needs a not real-positive");
      }
      return {p.a, p.center * (1.0 - p.a), 0.0, 1.0};
    }
    case LftKind::ParabolicNonAutomorphism:
    case LftKind::HNA2:
    case LftKind::NotSelfMap:
      break;
  }
  throw Error(ErrorCode::Unresolved, std::string("no standard form for ") + to_string(kind));
}

}  // namespace compop
