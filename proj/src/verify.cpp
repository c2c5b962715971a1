#include "compop/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "compop/io.hpp"

namespace compop {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& whole) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + s + "' in witness '" + whole + "'");
  }
  return v;
}

void expect_args(const std::vector<std::string>& args, std::size_t n, const std::string& whole) {
  if (args.size() != n) {
    throw Error(ErrorCode::ParseError, "witness '" + whole + "' expects " + std::to_string(n) + " argument(s)");
  }
}

bool is_nonneg_integer(cplx z) {
  return z.imag() == 0.0 && z.real() >= 0.0 && std::floor(z.real()) == z.real();
}

}  // namespace

bool WitnessSpec::transcendental() const noexcept {
  if (kind != Kind::Mult) return false;
  switch (family) {
    case Family::Binomial: return !is_nonneg_integer(param);
    case Family::Cayley: return param != cplx(0.0);
    case Family::Parabolic: return param != cplx(0.0);
    default: return false;
  }
}

std::string WitnessSpec::text() const {
  const std::string ks = std::to_string(k);
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Shift: return "shift:" + ks;
    case Kind::SigmaShift: return "sigma-shift:" + format_complex(center) + "," + ks;
    case Kind::QDiff: return "qdiff:" + ks;
    case Kind::QMultShifted: return "qmult-shifted:" + format_complex(tau) + "," + ks;
    case Kind::Mult:
      switch (family) {
        case Family::Monomial: return "mult:monomial," + ks;
        case Family::Sigma: return "mult:sigma," + format_complex(center) + "," + ks;
        case Family::Binomial: return "mult:binomial," + format_complex(param);
        case Family::Cayley: return "mult:cayley," + format_complex(param);
        case Family::Parabolic: return "mult:parabolic," + format_complex(param);
        case Family::None: break;
      }
      break;
  }
  return "unknown";
}

WitnessSpec parse_witness(const std::string& text) {
  WitnessSpec w;
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::vector<std::string> args =
      colon == std::string::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), ',');
  if (name == "identity") {
    expect_args(args, 0, text);
    w.kind = WitnessSpec::Kind::Identity;
  } else if (name == "shift") {
    expect_args(args, 1, text);
    w.kind = WitnessSpec::Kind::Shift;
    w.k = parse_count(args[0], text);
  } else if (name == "sigma-shift") {
    expect_args(args, 2, text);
    w.kind = WitnessSpec::Kind::SigmaShift;
    w.center = parse_complex(args[0]);
    w.k = parse_count(args[1], text);
  } else if (name == "qdiff") {
    expect_args(args, 1, text);
    w.kind = WitnessSpec::Kind::QDiff;
    w.k = parse_count(args[0], text);
  } else if (name == "qmult-shifted") {
    expect_args(args, 2, text);
    w.kind = WitnessSpec::Kind::QMultShifted;
    w.tau = parse_complex(args[0]);
    w.k = parse_count(args[1], text);
  } else if (name == "mult") {
    if (args.empty()) throw Error(ErrorCode::ParseError, "mult witness needs a family");
    w.kind = WitnessSpec::Kind::Mult;
    const std::string& fam = args[0];
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    if (fam == "monomial") {
      expect_args(rest, 1, text);
      w.family = WitnessSpec::Family::Monomial;
      w.k = parse_count(rest[0], text);
    } else if (fam == "sigma") {
      expect_args(rest, 2, text);
      w.family = WitnessSpec::Family::Sigma;
      w.center = parse_complex(rest[0]);
      w.k = parse_count(rest[1], text);
    } else if (fam == "binomial" || fam == "cayley" || fam == "parabolic") {
      expect_args(rest, 1, text);
      w.family = fam == "binomial" ? WitnessSpec::Family::Binomial
                 : fam == "cayley" ? WitnessSpec::Family::Cayley
                                   : WitnessSpec::Family::Parabolic;
      w.param = parse_complex(rest[0]);
    } else {
      throw Error(ErrorCode::ParseError, "unknown mult family '" + fam + "'");
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown witness '" + text + "'");
  }
  return w;
}

namespace {

PowerSeries witness_symbol(const WitnessSpec& w, std::size_t order) {
  switch (w.family) {
    case WitnessSpec::Family::Monomial: return PowerSeries::monomial(w.k, order);
    case WitnessSpec::Family::Sigma: return sigma_power(w.center, w.k, order);
    case WitnessSpec::Family::Binomial: return binomial_power(w.param, order);
    case WitnessSpec::Family::Cayley: return cayley_power(w.param, order);
    case WitnessSpec::Family::Parabolic:
      if (w.param.imag() != 0.0) {
        throw Error(ErrorCode::ParamOutOfRange, "parabolic eigenfunction parameter must be real");
      }
      return parabolic_eigenfunction(w.param.real(), order);
    case WitnessSpec::Family::None: break;
  }
  throw Error(ErrorCode::ParseError, "mult witness without a family");
}

}  // namespace

OperatorMatrix build_witness(const WitnessSpec& w, const SpaceSpec& space, std::size_t order) {
  std::optional<OperatorMatrix> out;
  switch (w.kind) {
    case WitnessSpec::Kind::Identity: out = identity_matrix(space, order); break;
    case WitnessSpec::Kind::Shift: out = basis_shift_matrix(w.k, space, order); break;
    case WitnessSpec::Kind::SigmaShift: out = sigma_shift_matrix(w.center, w.k, space, order); break;
    case WitnessSpec::Kind::QDiff: out = power(quasi_diff_matrix(space, order), w.k); break;
    case WitnessSpec::Kind::QMultShifted:
      out = power(shifted_quasi_mult(space, w.tau, order), w.k);
      break;
    case WitnessSpec::Kind::Mult:
      out = multiplication_matrix(witness_symbol(w, order), space, order);
      break;
  }
  return OperatorMatrix(out->space(), out->entries(), w.text());
}

bool needs_oversampling(const LinearFractionalMap& phi, const WitnessSpec& w) {
  if (!phi.is_affine()) return true;
  return w.transcendental() && std::abs(phi.b() / phi.d()) > 0.0;
}

namespace {

// Built once per working order and shared by every witness of a suite.
struct Composition {
  OperatorMatrix a;
  double norm;
};

Composition make_composition(const LinearFractionalMap& phi, const SpaceSpec& space, std::size_t order) {
  OperatorMatrix a = composition_matrix(phi, space, order);
  const double n = spectral_norm_estimate(a.entries(), 1e-8);
  return {std::move(a), n};
}

double block_residual(const Composition& c, const OperatorMatrix& x, cplx lambda, std::size_t block) {
  const Eigen::Index k = static_cast<Eigen::Index>(block);
  const Matrix& am = c.a.entries();
  const Matrix& xm = x.entries();
  const Matrix r = am.topRows(k) * xm.leftCols(k) - lambda * (xm.topRows(k) * am.leftCols(k));
  const double denom = c.norm * spectral_norm_estimate(xm, 1e-8);
  const double num = spectral_norm(r);
  return denom > 0.0 ? num / denom : num;
}

void check_order_margin(std::size_t order, std::size_t margin) {
  if (order == 0) throw Error(ErrorCode::DimensionMismatch, "truncation order must be positive");
  if (margin >= order) throw Error(ErrorCode::DimensionMismatch, "margin must be < N");
}

}  // namespace

ExtCheckResult ext_check(const LinearFractionalMap& phi, const SpaceSpec& space, std::size_t order,
                         cplx lambda, const WitnessSpec& witness, std::size_t margin,
                         double threshold, std::optional<bool> oversample) {
  check_order_margin(order, margin);
  const bool wide = oversample.value_or(needs_oversampling(phi, witness));
  const std::size_t m = wide ? kOversampleFactor * order : order;
  const Composition c = make_composition(phi, space, m);
  const OperatorMatrix x = build_witness(witness, space, m);
  ExtCheckResult r;
  r.witness = witness;
  r.lambda = lambda;
  r.order = order;
  r.margin = margin;
  r.working_order = m;
  r.residual = block_residual(c, x, lambda, order - margin);
  r.threshold = threshold;
  r.pass = r.residual <= threshold;
  return r;
}

// ---------------------------------------------------------------------------

bool VerifyReport::all_pass() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

namespace {

enum class Family {
  FockIdentity,
  FockElliptic,
  FockAffine,
  Identity,
  Elliptic,
  Lox,  // HNA III and loxodromic, affine with interior fixed point
  HA,
  HNA1,
  PA,
};

const char* family_name(Family f) {
  switch (f) {
    case Family::FockIdentity: return "fock-identity";
    case Family::FockElliptic: return "fock-elliptic";
    case Family::FockAffine: return "fock-affine";
    case Family::Identity: return "bergman-identity";
    case Family::Elliptic: return "bergman-elliptic";
    case Family::Lox: return "bergman-loxodromic";
    case Family::HA: return "bergman-hyperbolic-automorphism";
    case Family::HNA1: return "bergman-hna1";
    case Family::PA: return "bergman-parabolic-automorphism";
  }
  return "unknown";
}

[[noreturn]] void unresolved(const std::string& why) { throw Error(ErrorCode::Unresolved, why); }

struct Resolved {
  Family family;
  LftClass cls;
  cplx w{1.0, 0.0};       // Fock/elliptic multiplier, HNA/lox multiplier
  cplx shift{0.0, 0.0};   // Fock translation b/d
  cplx center{0.0, 0.0};  // loxodromic interior fixed point
  double r = 0.0;         // HA phi(0), HNA1 multiplier
  cplx a{0.0, 0.0};       // PA parameter
};

bool near(const ExtendedComplex& p, cplx z) { return p.is_finite() && std::abs(p.value() - z) <= 1e-9; }

bool acts_on_disk(const LinearFractionalMap& phi) {
  const bool pole_ok = phi.is_affine() || std::abs(phi.d() / phi.c()) > 1.0 + 1e-12;
  return pole_ok && is_self_map_of_disk(phi);
}

Resolved resolve(const LinearFractionalMap& phi, const SpaceSpec& space) {
  Resolved res;
  if (space.is_disk_space() && !acts_on_disk(phi)) {
    throw Error(ErrorCode::SymbolNotAdmissible, "phi is not a self-map of the unit disk");
  }
  if (space.kind() == SpaceKind::Hardy) {
    unresolved("the verification suite covers the Bergman and Fock spaces only");
  }
  if (space.kind() == SpaceKind::Fock) {
    if (!is_fock_symbol(phi)) {
      throw Error(ErrorCode::SymbolNotAdmissible, "phi does not induce a bounded C_phi on Fock space");
    }
    res.cls = classify(phi);
    res.w = phi.a() / phi.d();
    res.shift = phi.b() / phi.d();
    if (std::abs(res.w - 1.0) <= 1e-14 && res.shift == cplx(0.0)) {
      res.family = Family::FockIdentity;
    } else if (std::abs(std::abs(res.w) - 1.0) <= 1e-12) {
      res.family = Family::FockElliptic;
    } else if (std::abs(res.w) == 0.0) {
      unresolved("constant symbol: C_phi is not injective");
    } else {
      res.family = Family::FockAffine;
    }
    return res;
  }

  res.cls = classify(phi);
  const LftClass& cls = res.cls;
  switch (cls.kind) {
    case LftKind::Identity:
      res.family = Family::Identity;
      return res;
    case LftKind::EllipticAutomorphism:
      if (std::abs(phi.b() / phi.d()) > 1e-14 || !phi.is_affine()) {
        unresolved("elliptic automorphism with fixed point off 0: no shift witness for this placement");
      }
      res.family = Family::Elliptic;
      res.w = phi.a() / phi.d();
      return res;
    case LftKind::HNA3:
    case LftKind::Loxodromic:
      if (!phi.is_affine() || !cls.fixed_points[0].is_finite() ||
          std::abs(cls.fixed_points[0].value()) >= 1.0) {
        unresolved("sigma witnesses need phi(z) = a(z - c) + c with c in the disk");
      }
      res.family = Family::Lox;
      res.center = cls.fixed_points[0].value();
      res.w = cls.multiplier;
      return res;
    case LftKind::HyperbolicAutomorphism: {
      const bool pm1 = (near(cls.fixed_points[0], 1.0) && near(cls.fixed_points[1], -1.0)) ||
                       (near(cls.fixed_points[0], -1.0) && near(cls.fixed_points[1], 1.0));
      if (!pm1) unresolved("Cayley witnesses need the fixed points at +1 and -1");
      res.family = Family::HA;
      res.r = (phi.b() / phi.d()).real();
      return res;
    }
    case LftKind::HNA1:
      if (!phi.is_affine() || !near(cls.fixed_points[0], 1.0)) {
        unresolved("binomial witnesses need phi(z) = rz + 1 - r");
      }
      res.family = Family::HNA1;
      res.r = cls.multiplier.real();
      return res;
    case LftKind::ParabolicAutomorphism: {
      if (!near(cls.fixed_points[0], 1.0)) unresolved("parabolic witnesses need the fixed point at 1");
      const cplx p0 = phi.b() / phi.d();
      res.a = 2.0 * p0 / (1.0 - p0);
      if (!equivalent(phi, LinearFractionalMap(2.0 - res.a, res.a, -res.a, 2.0 + res.a))) {
        unresolved("parabolic automorphism not of the form ((2-a)z+a)/(-az+2+a)");
      }
      res.family = Family::PA;
      return res;
    }
    default:
      break;
  }
  unresolved(std::string("no witness family for class ") + to_string(cls.kind));
}

WitnessSpec mult_witness(WitnessSpec::Family f, cplx param, std::size_t k = 0, cplx center = 0.0) {
  WitnessSpec w;
  w.kind = WitnessSpec::Kind::Mult;
  w.family = f;
  w.param = param;
  w.k = k;
  w.center = center;
  return w;
}

WitnessSpec simple_witness(WitnessSpec::Kind kind, std::size_t k, cplx extra = 0.0) {
  WitnessSpec w;
  w.kind = kind;
  w.k = k;
  w.center = extra;
  w.tau = extra;
  return w;
}

bool in_grid(const GridSpec& g, cplx z, double slack) {
  const double r = std::abs(z);
  switch (g.shape) {
    case GridShape::Circle: return std::abs(r - g.rmax) <= slack;
    case GridShape::Annulus: return r >= g.rmin && r <= g.rmax;
    case GridShape::Disk: return r > 0.0 && r <= g.rmax;
  }
  return false;
}

}  // namespace

GridSpec default_grid(LftKind kind, const SpaceSpec& space, const LinearFractionalMap& phi) {
  if (space.kind() == SpaceKind::Fock) {
    const cplx w = phi.a() / phi.d();
    if (std::abs(std::abs(w) - 1.0) <= 1e-12) return {GridShape::Circle, 504, 1.0, 1.0};
    return {GridShape::Annulus, 2000, 0.2, 5.0};
  }
  switch (kind) {
    case LftKind::Identity:
    case LftKind::EllipticAutomorphism: return {GridShape::Circle, 504, 1.0, 1.0};
    case LftKind::HNA3:
    case LftKind::Loxodromic: return {GridShape::Annulus, 4096, 0.01, 100.0};
    case LftKind::HNA1: return {GridShape::Disk, 2000, 0.0, 1.5};
    default: return {GridShape::Annulus, 2000, 0.2, 5.0};
  }
}

VerifyReport verify_theorem_suite(const LinearFractionalMap& phi, const SpaceSpec& space,
                                  std::size_t order, const VerifyOptions& options) {
  if (order < 4) throw Error(ErrorCode::DimensionMismatch, "verification needs N >= 4");
  const Resolved res = resolve(phi, space);
  VerifyReport rep;
  rep.kind = res.cls.kind;
  rep.family = family_name(res.family);
  rep.space = space;
  rep.order = order;

  const std::size_t n = order;
  const std::size_t half = n / 2;
  const std::size_t wide_order = kOversampleFactor * n;
  std::optional<Composition> narrow, wide;
  auto composition_at = [&](std::size_t m) -> const Composition& {
    std::optional<Composition>& slot = m == n ? narrow : wide;
    if (!slot) slot = make_composition(phi, space, m);
    return *slot;
  };

  auto residual_row = [&](const std::string& theorem, const WitnessSpec& w, cplx lambda,
                          std::size_t margin, double threshold) {
    const bool over = options.oversample.value_or(needs_oversampling(phi, w));
    const std::size_t m = over ? wide_order : n;
    const OperatorMatrix x = build_witness(w, space, m);
    VerifyRow row;
    row.theorem = theorem;
    row.check = "residual";
    row.witness = w.text();
    row.lambda = lambda;
    row.margin = margin;
    row.working_order = m;
    row.value = block_residual(composition_at(m), x, lambda, n - margin);
    row.threshold = threshold;
    row.pass = row.value <= threshold;
    rep.rows.push_back(row);
  };

  auto series_row = [&](const std::string& theorem, const WitnessSpec& w, cplx lambda,
                        double threshold) {
    const bool over = options.oversample.value_or(true);
    const std::size_t m = over ? wide_order : n;
    const PowerSeries g = witness_symbol(w, m);
    const PowerSeries lhs = compose_series(g, phi, half);
    double worst = 0.0;
    for (std::size_t k = 0; k < half; ++k) worst = std::max(worst, std::abs(lhs[k] - lambda * g[k]));
    VerifyRow row;
    row.theorem = theorem;
    row.check = "series";
    row.witness = w.text();
    row.lambda = lambda;
    row.margin = n - half;
    row.working_order = m;
    row.value = worst;
    row.threshold = threshold;
    row.pass = worst <= threshold;
    rep.rows.push_back(row);
  };

  using K = WitnessSpec::Kind;
  using F = WitnessSpec::Family;
  const std::size_t kmax = std::min<std::size_t>(5, n - 1);
  bool use_certified = false;

  switch (res.family) {
    case Family::FockIdentity:
    case Family::Identity:
      residual_row("identity", simple_witness(K::Identity, 0), 1.0, 0, 1e-14);
      break;
    case Family::FockElliptic:
      for (std::size_t k = 1; k <= kmax; ++k) {
        const cplx wk = std::pow(res.w, static_cast<double>(k));
        residual_row("fock-elliptic", simple_witness(K::Shift, k), 1.0 / wk, 0, 1e-12);
        residual_row("fock-elliptic", simple_witness(K::QDiff, k), 1.0 / wk, k, 1e-12);
        residual_row("fock-elliptic", mult_witness(F::Monomial, 0.0, k), wk, k, 1e-12);
      }
      break;
    case Family::FockAffine: {
      const cplx tau = res.shift / (1.0 - res.w);
      residual_row("fock-affine", simple_witness(K::QDiff, 1), 1.0 / res.w, 1, 1e-10);
      for (std::size_t k = 2; k <= std::min<std::size_t>(3, n - 1); ++k) {
        residual_row("fock-affine", simple_witness(K::QDiff, k),
                     std::pow(res.w, -static_cast<double>(k)), k, 1e-9);
      }
      for (std::size_t k = 1; k <= std::min<std::size_t>(3, n - 1); ++k) {
        residual_row("fock-affine", simple_witness(K::QMultShifted, k, tau),
                     std::pow(res.w, static_cast<double>(k)), k, 1e-9);
      }
      if (res.shift == cplx(0.0)) {
        for (std::size_t k = 1; k <= kmax; ++k) {
          residual_row("fock-affine", simple_witness(K::Shift, k),
                       std::pow(res.w, -static_cast<double>(k)), 0, 1e-12);
        }
      }
      break;
    }
    case Family::Elliptic:
      for (std::size_t k = 1; k <= kmax; ++k) {
        const cplx wk = std::pow(res.w, static_cast<double>(k));
        residual_row("bergman-elliptic", simple_witness(K::Shift, k), 1.0 / wk, 0, 1e-14);
        residual_row("bergman-elliptic", mult_witness(F::Monomial, 0.0, k), wk, k, 1e-12);
      }
      break;
    case Family::Lox:
      for (std::size_t k = 1; k <= std::min<std::size_t>(3, n - 1); ++k) {
        const cplx ak = std::pow(res.w, static_cast<double>(k));
        residual_row("bergman-loxodromic", simple_witness(K::SigmaShift, k, res.center), 1.0 / ak, k, 1e-10);
        residual_row("bergman-loxodromic", mult_witness(F::Sigma, 0.0, k, res.center), ak, k, 1e-10);
      }
      break;
    case Family::HA: {
      const double kappa = (1.0 + res.r) / (1.0 - res.r);
      for (cplx w : {cplx(0.0, 1.0), cplx(0.0, 2.0), cplx(0.0, -1.0)}) {
        series_row("bergman-hyperbolic-automorphism", mult_witness(F::Cayley, w), std::pow(kappa, w), 1e-8);
      }
      residual_row("bergman-hyperbolic-automorphism", mult_witness(F::Cayley, cplx(0.0, 1.0)),
                   std::pow(kappa, cplx(0.0, 1.0)), n - half, 1e-6);
      use_certified = true;
      break;
    }
    case Family::HNA1:
      for (cplx w : {cplx(1.0), cplx(2.0), cplx(0.5, 3.0)}) {
        const cplx lam = std::pow(cplx(res.r), w);
        series_row("bergman-hna1", mult_witness(F::Binomial, w), lam, 1e-9);
        residual_row("bergman-hna1", mult_witness(F::Binomial, w), lam, n - half, 1e-6);
      }
      break;
    case Family::PA:
      for (double t : {0.0, 1.0, 2.0}) {
        series_row("bergman-parabolic-automorphism", mult_witness(F::Parabolic, t), std::exp(-res.a * t), 1e-7);
      }
      for (double t : {1.0, 2.0}) {
        residual_row("bergman-parabolic-automorphism", mult_witness(F::Parabolic, t),
                     std::exp(-res.a * t), n - half, 1e-6);
      }
      use_certified = true;
      break;
  }

  // Scan against the prediction.
  const PredictedExt predicted = predicted_ext(phi, space);
  ExtScanOptions so;
  so.grid = options.grid.value_or(default_grid(res.cls.kind, space, phi));
  so.sylvester_threshold = options.sylvester_threshold;
  for (const VerifyRow& row : rep.rows) {
    if (row.check == "residual") so.probes.push_back({row.lambda, row.witness, row.value, row.threshold});
  }
  const Composition& base = composition_at(n);
  if (use_certified && options.oversample.value_or(true)) {
    so.spectrum = certified_eigenvalues(composition_at(wide_order).a, n);
    so.spectrum_source = "eigenvalues of the order-" + std::to_string(n) +
                         " truncation certified against order " + std::to_string(wide_order);
  }
  rep.scan = ext_scan(base.a, so);
  rep.scan.predicted = predicted;

  {
    std::size_t outside = 0;
    for (const ExtCandidate& c : rep.scan.candidates) {
      if (c.flagged && predicted.distance(c.lambda) > c.step * (1.0 + 1e-9) + 1e-12) ++outside;
    }
    VerifyRow row;
    row.theorem = predicted.source;
    row.check = "scan";
    row.witness = "flags outside the predicted set";
    row.lambda = 0.0;
    row.working_order = n;
    row.value = static_cast<double>(outside);
    row.threshold = 0.0;
    row.pass = outside == 0;
    rep.rows.push_back(row);
  }

  if (predicted.kind == PredictedExt::Kind::DiscreteCyclic) {
    // Points base^m, |m| < N, inside the grid must each sit next to a flag.
    std::vector<cplx> targets;
    const long lim = std::min<long>(static_cast<long>(n) - 1, 1000);
    for (long m = -lim; m <= lim; ++m) {
      const cplx p = std::pow(predicted.base, static_cast<double>(m));
      if (!std::isfinite(std::abs(p)) || !in_grid(so.grid, p, 1e-9)) continue;
      if (ratio_distance(targets, p) <= 1e-12) continue;
      targets.push_back(p);
    }
    std::size_t missed = 0;
    for (cplx p : targets) {
      const bool hit = std::any_of(rep.scan.candidates.begin(), rep.scan.candidates.end(),
                                   [&](const ExtCandidate& c) { return c.flagged && std::abs(c.lambda - p) <= 1.5 * c.step; });
      if (!hit) ++missed;
    }
    VerifyRow row;
    row.theorem = predicted.source;
    row.check = "scan";
    row.witness = "predicted points without a nearby flag (" + std::to_string(targets.size()) + " in grid)";
    row.lambda = 0.0;
    row.working_order = n;
    row.value = static_cast<double>(missed);
    row.threshold = 0.0;
    row.pass = missed == 0;
    rep.rows.push_back(row);

    // Ratio set of the truncation against {base^m}.
    double worst = 0.0;
    for (cplx r : rep.scan.ratios) worst = std::max(worst, predicted.distance(r) / std::max(1.0, std::abs(r)));
    VerifyRow rr;
    rr.theorem = predicted.source;
    rr.check = "ratios";
    rr.witness = "truncation ratio set vs predicted set";
    rr.lambda = 0.0;
    rr.working_order = n;
    rr.value = worst;
    rr.threshold = 1e-8;
    rr.pass = worst <= 1e-8;
    rep.rows.push_back(rr);
  }
  return rep;
}

}  // namespace compop
