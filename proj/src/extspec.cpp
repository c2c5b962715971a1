#include "compop/extspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace compop {

namespace {

using Index = Eigen::Index;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& x) {
  if (!(a.space() == x.space()) || a.order() != x.order()) {
    throw Error(ErrorCode::DimensionMismatch, "A and X differ in space or order");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

double intertwining_residual_block(const OperatorMatrix& a, const OperatorMatrix& x,
                                   cplx lambda, std::size_t block) {
  require_compatible(a, x);
  if (block == 0 || block > a.order()) {
    throw Error(ErrorCode::DimensionMismatch, "residual block must satisfy 0 < block <= N");
  }
  const Index k = static_cast<Index>(block);
  const Matrix& am = a.entries();
  const Matrix& xm = x.entries();
  const Matrix r = am.topRows(k) * xm.leftCols(k) - lambda * (xm.topRows(k) * am.leftCols(k));
  const double denom = spectral_norm(am) * spectral_norm(xm);
  const double num = spectral_norm(r);
  return denom > 0.0 ? num / denom : num;
}

double intertwining_residual(const OperatorMatrix& a, const OperatorMatrix& x, cplx lambda,
                             std::size_t margin) {
  require_compatible(a, x);
  if (margin >= a.order()) throw Error(ErrorCode::DimensionMismatch, "margin must be < N");
  return intertwining_residual_block(a, x, lambda, a.order() - margin);
}

// ---------------------------------------------------------------------------

std::vector<cplx> ratio_set_of(std::span<const cplx> eigenvalues, double dedup_tol) {
  std::vector<cplx> all;
  all.reserve(eigenvalues.size() * eigenvalues.size());
  for (cplx num : eigenvalues) {
    for (cplx den : eigenvalues) {
      if (den != cplx(0.0)) all.push_back(num / den);
    }
  }
  std::sort(all.begin(), all.end(), [](cplx p, cplx q) {
    return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
  });
  std::vector<cplx> kept;
  for (cplx z : all) {
    const double tol = dedup_tol * std::abs(z);  // ratios are scale-free; keeps 2^-40 apart from 2^-41
    bool duplicate = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (z.real() - it->real() > tol) break;
      if (std::abs(z - *it) <= tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(z);
  }
  return kept;
}

std::vector<cplx> ratio_set(const OperatorMatrix& a, double dedup_tol) {
  const Matrix& m = a.entries();
  if (is_upper_triangular(m)) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, i) == cplx(0.0)) {
        throw Error(ErrorCode::SingularTruncation, "truncation has a zero diagonal entry");
      }
    }
  } else if (smallest_singular_value(m) <= 1e-12 * std::max(1.0, spectral_norm(m))) {
    throw Error(ErrorCode::SingularTruncation, "truncation is numerically singular");
  }
  const std::vector<cplx> ev = eigenvalues(m);
  return ratio_set_of(ev, dedup_tol);
}

double ratio_distance(std::span<const cplx> ratios, cplx lambda) {
  double best = kInf;
  for (cplx r : ratios) best = std::min(best, std::abs(lambda - r));
  return best;
}

std::vector<cplx> certified_eigenvalues(const OperatorMatrix& wide, std::size_t order,
                                        double tol) {
  if (order == 0 || order > wide.order()) {
    throw Error(ErrorCode::DimensionMismatch, "certification order exceeds the wide truncation");
  }
  const Index n = static_cast<Index>(order);
  const Matrix& w = wide.entries();
  const double scale = spectral_norm_estimate(w, 1e-8);
  std::vector<cplx> out;
  for (const EigenPair& ep : eigenpairs(w.topLeftCorner(n, n))) {
    Vector r = w.leftCols(n) * ep.vector;
    r.head(n) -= ep.value * ep.vector;
    if (r.norm() <= tol * scale) out.push_back(ep.value);
  }
  return out;
}

// ---------------------------------------------------------------------------

SylvesterProbe::SylvesterProbe(const Matrix& a) {
  if (static_cast<std::size_t>(a.rows()) > kMaxSylvesterOrder) {
    throw Error(ErrorCode::TooLarge, "Sylvester operator limited to N <= 128");
  }
  t_ = schur(a).t;
  norm_a_ = spectral_norm(a);
  const Matrix off = t_.triangularView<Eigen::StrictlyUpper>();
  diagonal_ = off.norm() <= 1e-14 * std::max(1.0, t_.norm());
}

namespace {

// Y with T Y - lambda Y T = C, T upper triangular; columns left to right.
bool solve_forward(const Matrix& t, cplx lambda, const Matrix& c, Matrix& y) {
  const Index n = t.rows();
  y.resize(n, n);
  Vector rhs(n);
  for (Index j = 0; j < n; ++j) {
    rhs = c.col(j);
    if (j > 0) rhs.noalias() += lambda * (y.leftCols(j) * t.col(j).head(j));
    const cplx shift = lambda * t(j, j);
    for (Index i = n - 1; i >= 0; --i) {
      cplx acc = rhs(i);
      for (Index l = i + 1; l < n; ++l) acc -= t(i, l) * y(l, j);
      y(i, j) = acc / (t(i, i) - shift);
    }
  }
  return y.allFinite();
}

// Z with T^* Z - conj(lambda) Z T^* = C; columns right to left.
bool solve_adjoint(const Matrix& t, cplx lambda, const Matrix& c, Matrix& z) {
  const Index n = t.rows();
  z.resize(n, n);
  Vector rhs(n);
  const cplx lb = std::conj(lambda);
  for (Index j = n - 1; j >= 0; --j) {
    rhs = c.col(j);
    if (j < n - 1) {
      const Index m = n - 1 - j;
      rhs.noalias() += lb * (z.rightCols(m) * t.row(j).tail(m).adjoint());
    }
    const cplx shift = std::conj(lambda * t(j, j));
    for (Index i = 0; i < n; ++i) {
      cplx acc = rhs(i);
      for (Index l = 0; l < i; ++l) acc -= std::conj(t(l, i)) * z(l, j);
      z(i, j) = acc / (std::conj(t(i, i)) - shift);
    }
  }
  return z.allFinite();
}

}  // namespace

double SylvesterProbe::min_singular_value(cplx lambda) const {
  const Index n = t_.rows();
  if (n == 0) return 0.0;
  // The Kronecker form of Y -> T Y - lambda Y T is triangular with diagonal
  // T_ii - lambda T_jj, so its smallest modulus bounds sigma_min from above.
  double dmin = kInf;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) dmin = std::min(dmin, std::abs(t_(i, i) - lambda * t_(j, j)));
  }
  if (dmin == 0.0 || diagonal_) return dmin;

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  Matrix x(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) x(i, j) = cplx(g(rng), g(rng));
  }
  x /= x.norm();

  Matrix y, z;
  double est = kInf;
  for (int it = 0; it < 80; ++it) {
    if (!solve_adjoint(t_, lambda, x, y)) return 0.0;
    const double ny = y.norm();
    if (!(ny > 0.0) || !std::isfinite(ny)) return 0.0;
    const double next = 1.0 / ny;
    if (!solve_forward(t_, lambda, y, z)) return 0.0;
    const double nz = z.norm();
    if (!(nz > 0.0) || !std::isfinite(nz)) return 0.0;
    x = z / nz;
    const bool converged = std::abs(est - next) <= 1e-7 * next;
    est = next;
    if (converged) break;
  }
  return std::min(est, dmin);
}

double SylvesterProbe::normalized(cplx lambda) const {
  const double denom = norm_a_ * (1.0 + std::abs(lambda));
  const double s = min_singular_value(lambda);
  return denom > 0.0 ? s / denom : s;
}

double sylvester_min_sv(const OperatorMatrix& a, cplx lambda) {
  return SylvesterProbe(a.entries()).normalized(lambda);
}

// ---------------------------------------------------------------------------

const char* to_string(GridShape shape) noexcept {
  switch (shape) {
    case GridShape::Circle: return "circle";
    case GridShape::Annulus: return "annulus";
    case GridShape::Disk: return "disk";
  }
  return "unknown";
}

std::vector<GridPoint> make_grid(const GridSpec& spec) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<GridPoint> out;
  if (spec.points <= 0 || !(spec.rmax > 0.0)) {
    throw Error(ErrorCode::EmptyGrid, "grid needs points > 0 and rmax > 0");
  }
  switch (spec.shape) {
    case GridShape::Circle: {
      const int p = spec.points;
      const double step = 2.0 * spec.rmax * std::sin(std::numbers::pi / p);
      for (int k = 0; k < p; ++k) out.push_back({std::polar(spec.rmax, two_pi * k / p), step});
      break;
    }
    case GridShape::Annulus: {
      if (!(spec.rmin > 0.0) || !(spec.rmax > spec.rmin)) {
        throw Error(ErrorCode::EmptyGrid, "annulus grid needs 0 < rmin < rmax");
      }
      const double span = std::log(spec.rmax / spec.rmin);
      const int na = std::max(8, static_cast<int>(std::lround(std::sqrt(spec.points * two_pi / span))));
      const int nr = std::max(2, (spec.points + na - 1) / na);  // at least `points` nodes
      const double h = span / (nr - 1);
      const double rel = std::max(std::expm1(h), 2.0 * std::sin(std::numbers::pi / na));
      for (int i = 0; i < nr; ++i) {
        const double r = spec.rmin * std::exp(h * i);
        for (int k = 0; k < na; ++k) out.push_back({std::polar(r, two_pi * k / na), r * rel});
      }
      break;
    }
    case GridShape::Disk: {
      const int rings = std::max(1, static_cast<int>(std::lround(std::sqrt(spec.points / std::numbers::pi))));
      const double h = spec.rmax / rings;
      for (int i = 1; i <= rings; ++i) {
        const double r = h * i;
        const int na = std::max(6, static_cast<int>(std::lround(two_pi * i)));
        const double step = std::max(h, 2.0 * r * std::sin(std::numbers::pi / na));
        for (int k = 0; k < na; ++k) out.push_back({std::polar(r, two_pi * k / na), step});
      }
      break;
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyGrid, "grid has no nodes");
  return out;
}

std::size_t ExtScanReport::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(candidates.begin(), candidates.end(), [](const ExtCandidate& c) { return c.flagged; }));
}

namespace {

std::vector<FlagCluster> cluster_flags(const std::vector<ExtCandidate>& cands) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].flagged) idx.push_back(i);
  }
  std::vector<std::size_t> parent(idx.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t p = 0; p < idx.size(); ++p) {
    for (std::size_t q = p + 1; q < idx.size(); ++q) {
      const ExtCandidate& a = cands[idx[p]];
      const ExtCandidate& b = cands[idx[q]];
      if (std::abs(a.lambda - b.lambda) <= 1.5 * std::max(a.step, b.step)) {
        parent[find(p)] = find(q);
      }
    }
  }
  std::vector<FlagCluster> out;
  std::vector<std::size_t> root_of;
  std::vector<cplx> sums;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const std::size_t r = find(p);
    auto it = std::find(root_of.begin(), root_of.end(), r);
    std::size_t slot;
    if (it == root_of.end()) {
      slot = root_of.size();
      root_of.push_back(r);
      out.push_back({});
      sums.push_back(0.0);
    } else {
      slot = static_cast<std::size_t>(it - root_of.begin());
    }
    sums[slot] += cands[idx[p]].lambda;
    out[slot].size += 1;
  }
  for (std::size_t s = 0; s < out.size(); ++s) out[s].center = sums[s] / static_cast<double>(out[s].size);
  return out;
}

}  // namespace

ExtScanReport ext_scan(const OperatorMatrix& a, const ExtScanOptions& options) {
  ExtScanReport rep;
  rep.label = a.label();
  rep.grid = options.grid;
  rep.sylvester_threshold = options.sylvester_threshold;
  const std::vector<GridPoint> grid = make_grid(options.grid);

  if (options.spectrum) {
    rep.ratios = ratio_set_of(*options.spectrum);
    rep.spectrum_source = options.spectrum_source;
  } else {
    rep.ratios = ratio_set(a);
    rep.spectrum_source = "truncation";
  }

  rep.candidates.reserve(grid.size());
  for (const GridPoint& gp : grid) {
    ExtCandidate c;
    c.lambda = gp.lambda;
    c.step = gp.step;
    c.ratio_distance = ratio_distance(rep.ratios, gp.lambda);
    rep.candidates.push_back(c);
  }

  const double norm_a = spectral_norm(a.entries());
  rep.conditioning = norm_a > 0.0 ? smallest_singular_value(a.entries()) / norm_a : 0.0;
  if (a.order() > kMaxSylvesterOrder) {
    rep.notes.push_back("Sylvester minima skipped: order exceeds 128");
  } else if (rep.conditioning <= options.sylvester_threshold) {
    rep.notes.push_back(
        "Sylvester minima skipped: sigma_min(A)/||A|| is below the threshold, which bounds the "
        "normalized Sylvester minimum at every lambda");
  } else {
    rep.sylvester_evaluated = true;
    const SylvesterProbe probe(a.entries());
    std::vector<std::size_t> which(rep.candidates.size());
    std::iota(which.begin(), which.end(), std::size_t{0});
    if (a.order() > options.full_sylvester_max_order &&
        which.size() > options.sylvester_candidates) {
      std::stable_sort(which.begin(), which.end(), [&](std::size_t p, std::size_t q) {
        return rep.candidates[p].ratio_distance < rep.candidates[q].ratio_distance;
      });
      which.resize(options.sylvester_candidates);
      std::sort(which.begin(), which.end());
    }
    for (std::size_t i : which) {
      rep.candidates[i].sylvester_min_sv = probe.normalized(rep.candidates[i].lambda);
    }
  }

  for (ExtCandidate& c : rep.candidates) {
    c.flagged = c.ratio_distance <= c.step ||
                (c.sylvester_min_sv && *c.sylvester_min_sv <= options.sylvester_threshold);
  }
  rep.probes = options.probes;
  rep.clusters = cluster_flags(rep.candidates);
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(PredictedExt::Kind kind) noexcept {
  switch (kind) {
    case PredictedExt::Kind::DiscreteCyclic: return "DiscreteCyclic";
    case PredictedExt::Kind::UnitCircle: return "UnitCircle";
    case PredictedExt::Kind::ClosedPuncturedDisk: return "ClosedPuncturedDisk";
    case PredictedExt::Kind::AnnulusBounded: return "AnnulusBounded";
  }
  return "Unknown";
}

double PredictedExt::distance(cplx lambda) const {
  const double r = std::abs(lambda);
  switch (kind) {
    case Kind::UnitCircle: return std::abs(r - 1.0);
    case Kind::ClosedPuncturedDisk: return r == 0.0 ? kInf : std::max(0.0, r - 1.0);
    case Kind::AnnulusBounded:
      return r < inner ? inner - r : (r > outer ? r - outer : 0.0);
    case Kind::DiscreteCyclic: {
      if (lambda == cplx(0.0)) return kInf;
      const double b = std::abs(base);
      double best = kInf;
      if (std::abs(b - 1.0) <= 1e-12) {
        // {w^n} for unimodular w: one full period when w is a root of unity,
        // otherwise the first 2000 powers either way.
        cplx pw = 1.0;
        for (int n = 0; n < 1000; ++n) {
          best = std::min({best, std::abs(lambda - pw), std::abs(lambda - std::conj(pw))});
          pw *= base;
          if (n > 0 && std::abs(pw - 1.0) <= 1e-12) break;
        }
        return best;
      }
      const double n0 = std::round(std::log(r) / std::log(b));
      for (double n = n0 - 1; n <= n0 + 1; n += 1.0) best = std::min(best, std::abs(lambda - std::pow(base, n)));
      return best;
    }
  }
  return kInf;
}

PredictedExt predicted_ext(const LinearFractionalMap& phi, const SpaceSpec& space) {
  PredictedExt p;
  if (space.kind() == SpaceKind::Fock) {
    if (!is_fock_symbol(phi)) {
      throw Error(ErrorCode::SymbolNotAdmissible, "phi does not induce a bounded C_phi on Fock space");
    }
    p.kind = PredictedExt::Kind::DiscreteCyclic;
    p.base = phi.a() / phi.d();
    p.source = std::abs(std::abs(p.base) - 1.0) <= 1e-12
                   ? "Fock elliptic: Ext = {w^n : n in Z}"
                   : "Fock affine phi = wz + b: Ext = {w^n : n in Z}";
    return p;
  }
  const bool pole_ok = phi.is_affine() || std::abs(phi.d() / phi.c()) > 1.0 + 1e-12;
  if (!pole_ok || !is_self_map_of_disk(phi)) {
    throw Error(ErrorCode::SymbolNotAdmissible, "phi is not a self-map of the unit disk");
  }
  if (space.kind() == SpaceKind::Hardy) {
    throw Error(ErrorCode::Unresolved, "no extended-spectrum characterization is given on H^2");
  }
  const LftClass cls = classify(phi);
  switch (cls.kind) {
    case LftKind::Identity:
      p.kind = PredictedExt::Kind::DiscreteCyclic;
      p.base = 1.0;
      p.source = "identity: Ext = {1}";
      return p;
    case LftKind::EllipticAutomorphism:
      p.kind = PredictedExt::Kind::DiscreteCyclic;
      p.base = cls.multiplier;
      p.source = "Bergman elliptic: Ext = {w^n : n in Z}";
      return p;
    case LftKind::HNA3:
    case LftKind::Loxodromic:
      p.kind = PredictedExt::Kind::DiscreteCyclic;
      p.base = cls.multiplier;
      p.source = "Bergman loxodromic / HNA III: Ext = {phi'(c)^n : n in Z}";
      p.point_spectrum = PredictedExt::PointSpectrum{"{phi'(c)^n : n >= 0}", 0.0, 1.0};
      return p;
    case LftKind::HyperbolicAutomorphism: {
      p.kind = PredictedExt::Kind::UnitCircle;
      p.source = "Bergman hyperbolic automorphism: Ext = T";
      const double big_r = 1.0 / std::abs(cls.multiplier);
      p.point_spectrum = PredictedExt::PointSpectrum{"R^{-1/2} < |lambda| < R^{1/2} (quoted from H^2)",
                                                     1.0 / std::sqrt(big_r), std::sqrt(big_r)};
      return p;
    }
    case LftKind::HNA1: {
      p.kind = PredictedExt::Kind::ClosedPuncturedDisk;
      p.source = "Bergman HNA I: Ext = closed disk minus {0}";
      const double r = std::abs(cls.multiplier);
      p.point_spectrum = PredictedExt::PointSpectrum{"0 < |lambda| < r^{-1/2} (quoted from H^2)", 0.0,
                                                     1.0 / std::sqrt(r)};
      return p;
    }
    case LftKind::ParabolicAutomorphism:
      p.kind = PredictedExt::Kind::UnitCircle;
      p.source = "Bergman parabolic automorphism: Ext = unit circle";
      return p;
    case LftKind::ParabolicNonAutomorphism:
    case LftKind::HNA2:
    case LftKind::NotSelfMap:
      break;
  }
  throw Error(ErrorCode::Unresolved,
              std::string("no extended-spectrum characterization for class ") + to_string(cls.kind));
}

// ---------------------------------------------------------------------------

bool LemmaReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
}

double set_distance(std::span<const cplx> a, std::span<const cplx> b) {
  auto one_way = [](std::span<const cplx> from, std::span<const cplx> to) {
    double worst = 0.0;
    for (cplx z : from) {
      worst = std::max(worst, ratio_distance(to, z) / std::max(1.0, std::abs(z)));
    }
    return worst;
  };
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : kInf;
  return std::max(one_way(a, b), one_way(b, a));
}

Matrix random_diagonalizable(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2.0 * std::numbers::pi);
  const Index m = static_cast<Index>(n);
  Matrix v(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) v(i, j) = cplx(g(rng), g(rng));
  }
  Vector mu(m);
  for (Index i = 0; i < m; ++i) mu(i) = std::polar(radius(rng), angle(rng));
  return v * mu.asDiagonal() * v.inverse();
}

LemmaReport lemma_suite(const OperatorMatrix& a, const OperatorMatrix& partner, cplx scale,
                        std::uint64_t seed) {
  constexpr double kSetTol = 1e-10;
  constexpr double kSylZero = 1e-10;
  LemmaReport rep;
  const SylvesterProbe probe(a.entries());

  {
    const double s0 = probe.normalized(0.0);
    rep.checks.push_back({"zero_not_extended", s0 > 1e-6, s0, 1e-6,
                          "normalized sigma_min(X -> AX) must stay away from 0"});
  }

  const std::vector<cplx> ratios = ratio_set(a);
  {
    std::vector<cplx> expected;
    for (cplx r : ratios) expected.push_back(std::conj(1.0 / r));
    const std::vector<cplx> adj = ratio_set(adjoint(a));
    const double d = set_distance(adj, expected);
    rep.checks.push_back({"adjoint_conjugate_reciprocal", d <= kSetTol, d, kSetTol,
                          "ratio set of A^* equals conj(1/rho) over the ratio set of A"});
  }
  {
    const std::vector<cplx> sc = ratio_set(scaled(scale, a));
    const double d = set_distance(sc, ratios);
    rep.checks.push_back({"scaling_invariance", d <= kSetTol, d, kSetTol,
                          "ratio set of sA equals the ratio set of A"});
  }
  {
    const std::vector<cplx> ev = eigenvalues(a.entries());
    const double norm_a = probe.norm_a();
    std::vector<cplx> probes = ratios;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), lr(std::log(0.2), std::log(5.0));
    for (cplx r : ratios) probes.push_back(r * (1.0 + 1e-4 * std::polar(1.0, ang(rng))));
    for (int i = 0; i < 20; ++i) probes.push_back(std::polar(std::exp(lr(rng)), ang(rng)));
    std::size_t mismatches = 0, stray = 0;
    for (cplx lam : probes) {
      double pair_min = kInf;
      for (cplx mi : ev) {
        for (cplx mj : ev) pair_min = std::min(pair_min, std::abs(mi - lam * mj));
      }
      const bool syl_zero = probe.normalized(lam) <= kSylZero;
      const bool pair_zero = pair_min <= 1e-8 * norm_a;
      if (syl_zero != pair_zero) ++mismatches;
      if (syl_zero && ratio_distance(ratios, lam) > 1e-8 * std::max(1.0, std::abs(lam))) ++stray;
    }
    rep.checks.push_back({"sylvester_ratio_equivalence", mismatches == 0,
                          static_cast<double>(mismatches), 0.0,
                          "Sylvester minimum <= 1e-10 exactly at eigenvalue-ratio points"});
    rep.checks.push_back({"flagged_within_ratio_set", stray == 0, static_cast<double>(stray), 0.0,
                          "every Sylvester-zero lambda lies in the ratio set"});
  }
  {
    const OperatorMatrix sum = direct_sum(a, partner);
    const SylvesterProbe sum_probe(sum.entries());
    std::vector<cplx> want = ratios;
    const std::vector<cplx> other = ratio_set(partner);
    want.insert(want.end(), other.begin(), other.end());
    double worst = 0.0;
    for (cplx r : want) worst = std::max(worst, sum_probe.normalized(r));
    rep.checks.push_back({"direct_sum_inclusion", worst <= kSylZero, worst, kSylZero,
                          "ratios of each summand are Sylvester zeros of the direct sum"});
  }
  return rep;
}

RichSpectrumReport rich_spectrum_annulus_check(const ExtScanReport& scan,
                                               std::span<const cplx> eigenvalues, double inner,
                                               double outer, double tol) {
  if (!(inner > 0.0) || !(outer >= inner)) {
    throw Error(ErrorCode::BadAnnulus, "annulus needs 0 < inner <= outer");
  }
  RichSpectrumReport rep;
  rep.eigenvalues_in_annulus = std::all_of(eigenvalues.begin(), eigenvalues.end(), [&](cplx z) {
    const double r = std::abs(z);
    return r >= inner * (1.0 - tol) && r <= outer * (1.0 + tol);
  });
  for (const ExtCandidate& c : scan.candidates) {
    if (!c.flagged || std::abs(std::abs(c.lambda) - 1.0) <= c.step) continue;
    ++rep.off_circle_flags;
    if (c.sylvester_min_sv && *c.sylvester_min_sv <= scan.sylvester_threshold) {
      ++rep.off_circle_sylvester_flags;
    }
  }
  rep.pass = rep.eigenvalues_in_annulus && rep.off_circle_sylvester_flags == 0;
  rep.caveat =
      "a finite truncation only approximates the annulus hypothesis; a pass is consistency, not proof";
  return rep;
}

}  // namespace compop
