// One PASS/FAIL line per acceptance criterion; nonzero exit when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "compop/verify.hpp"

using namespace compop;

namespace {

const cplx I(0.0, 1.0);
const cplx kW7 = std::polar(1.0, 2.0 * std::numbers::pi / 7.0);
// Residuals that are exact in exact arithmetic land at a few ulps; a trend
// below this cannot be told apart from rounding.
constexpr double kNoiseFloor = 64.0 * std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

const VerifyRow* row_of(const VerifyReport& r, const std::string& check, const std::string& witness) {
  for (const auto& row : r.rows) {
    if (row.check == check && row.witness == witness) return &row;
  }
  return nullptr;
}

// Row must exist, pass, and respect `tol` (which may be tighter than the suite's own threshold).
void require_row(Outcome& o, const VerifyReport& r, const std::string& check, const std::string& witness,
                 double tol, double* worst = nullptr) {
  const VerifyRow* row = row_of(r, check, witness);
  if (row == nullptr) {
    o.require(false, "missing " + check + " row " + witness);
    return;
  }
  o.require(row->value <= tol, check + " " + witness + " = " + sci(row->value) + " > " + sci(tol));
  if (worst) *worst = std::max(*worst, row->value);
}

std::size_t flags_outside(const ExtScanReport& s, const std::function<double(cplx)>& dist) {
  std::size_t n = 0;
  for (const auto& c : s.candidates) {
    if (c.flagged && dist(c.lambda) > c.step * (1.0 + 1e-9) + 1e-12) ++n;
  }
  return n;
}

bool probe_flagged(const ExtScanReport& s, cplx lambda) {
  return std::any_of(s.probes.begin(), s.probes.end(),
                     [&](const WitnessProbe& p) { return std::abs(p.lambda - lambda) <= 1e-12 && p.flagged(); });
}

// ---------------------------------------------------------------------------

const LinearFractionalMap kFockRot(kW7, 0.0, 0.0, 1.0);
const LinearFractionalMap kFockAffine(0.5, 1.0, 0.0, 1.0);
const LinearFractionalMap kLox(0.5, 0.5 * 0.2, 0.0, 1.0);  // a(z - c) + c, a = 0.5, c = 0.2
const LinearFractionalMap kHA(1.0, 0.5, 0.5, 1.0);         // (z + r)/(1 + rz), r = 0.5
const LinearFractionalMap kHNA1(0.5, 0.5, 0.0, 1.0);
const cplx kPA = 2.0 * I;
const LinearFractionalMap kPAmap(2.0 - kPA, kPA, -kPA, 2.0 + kPA);

Outcome criterion1() {
  Outcome o;
  const VerifyReport r = verify_theorem_suite(kFockRot, SpaceSpec::fock(1.0), 48);
  double worst = 0.0;
  for (std::size_t k = 1; k <= 5; ++k) {
    require_row(o, r, "residual", "shift:" + std::to_string(k), 1e-12, &worst);
    require_row(o, r, "residual", "qdiff:" + std::to_string(k), 1e-12, &worst);
  }
  const ExtScanReport& s = r.scan;
  o.require(s.grid.shape == GridShape::Circle && s.candidates.size() == 504, "scan grid is not the 504-point circle");
  o.require(s.clusters.size() == 7, std::to_string(s.clusters.size()) + " clusters instead of 7");
  for (const auto& c : s.clusters) {
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 7; ++k) d = std::min(d, std::abs(c.center - std::pow(kW7, static_cast<double>(k))));
    o.require(d <= 2.0 * std::numbers::pi / 504.0, "cluster away from a seventh root of unity");
  }
  const std::size_t off = flags_outside(s, [](cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 7; ++k) d = std::min(d, std::abs(z - std::pow(kW7, static_cast<double>(k))));
    return d;
  });
  o.require(off == 0, std::to_string(off) + " flags away from the roots");
  if (o.pass) o.detail = "worst residual " + sci(worst) + ", 7 clusters, " + std::to_string(s.flagged_count()) + " flagged nodes";
  return o;
}

struct Trend {
  std::vector<std::string> keys;
  std::vector<double> values;
};

// Residual and series rows of a report, by witness, for the convergence check.
Trend trend_of(const VerifyReport& r) {
  Trend t;
  for (const auto& row : r.rows) {
    if (row.check != "residual" && row.check != "series") continue;
    t.keys.push_back(row.check + " " + row.witness);
    t.values.push_back(row.value);
  }
  return t;
}

Outcome criterion2(std::vector<Trend>* trend) {
  Outcome o;
  const SpaceSpec f = SpaceSpec::fock(1.0);
  const VerifyReport r = verify_theorem_suite(kFockAffine, f, 64);
  double worst = 0.0;
  require_row(o, r, "residual", "qdiff:1", 1e-10, &worst);
  for (std::size_t k = 1; k <= 3; ++k) require_row(o, r, "residual", "qmult-shifted:2," + std::to_string(k), 1e-9, &worst);
  // Ratio set of the triangular truncation against 2^{j-i}.
  const std::vector<cplx> ratios = ratio_set(composition_matrix(kFockAffine, f, 64));
  double rworst = 0.0;
  for (cplx z : ratios) {
    const double m = std::round(std::log2(std::abs(z)));
    rworst = std::max(rworst, std::abs(z - std::pow(2.0, m)));
  }
  o.require(rworst <= 1e-8, "ratio set off {2^m} by " + sci(rworst));
  o.require(ratios.size() == 127, std::to_string(ratios.size()) + " distinct ratios instead of 127");
  if (trend) {
    for (std::size_t n : {32u, 64u}) trend->push_back(trend_of(verify_theorem_suite(kFockAffine, f, n)));
  }
  if (o.pass) o.detail = "worst residual " + sci(worst) + ", ratio set within " + sci(rworst) + " of {2^m}";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const SpaceSpec b = SpaceSpec::bergman();
  const std::size_t n = 48;
  const OperatorMatrix a = composition_matrix(kFockRot, b, n);
  // diag(w^n) against the backward shift: exact in exact arithmetic. For an
  // irrational w the entries w^{n-k} and w^{-k} w^n round independently, so
  // the best a double can do is a few ulps; with w = i every power is exact
  // and the residual must vanish identically.
  const OperatorMatrix ai = composition_matrix({I, 0.0, 0.0, 1.0}, b, n);
  double shift_worst = 0.0, shift_exact = 0.0, mult_worst = 0.0;
  cplx inv_ik = 1.0;
  for (std::size_t k = 1; k <= 5; ++k) {
    const cplx lam = std::pow(kW7, -static_cast<double>(k));
    shift_worst = std::max(shift_worst, intertwining_residual(a, basis_shift_matrix(k, b, n), lam, 0));
    inv_ik *= -I;
    shift_exact = std::max(shift_exact, intertwining_residual(ai, basis_shift_matrix(k, b, n), inv_ik, 0));
    const OperatorMatrix m = multiplication_matrix(PowerSeries::monomial(k, n), b, n);
    mult_worst = std::max(mult_worst, intertwining_residual(a, m, std::pow(kW7, static_cast<double>(k)), k));
  }
  const double ulps = 4.0 * std::numeric_limits<double>::epsilon();
  o.require(shift_worst <= ulps, "shift residual " + sci(shift_worst) + " above rounding level");
  o.require(shift_exact == 0.0, "shift residual for w = i is " + sci(shift_exact) + ", not 0");
  o.require(mult_worst <= 1e-12, "M_{z^k} residual " + sci(mult_worst));
  if (o.pass) {
    o.detail = "shift residual " + sci(shift_worst) + " (<= 4 ulp; exactly 0 for w = i), M_{z^k} worst " + sci(mult_worst);
  }
  return o;
}

Outcome criterion4(std::vector<Trend>* trend) {
  Outcome o;
  const SpaceSpec b = SpaceSpec::bergman();
  const VerifyReport r = verify_theorem_suite(kLox, b, 64);
  double worst = 0.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    require_row(o, r, "residual", "sigma-shift:0.2," + std::to_string(k), 1e-10, &worst);
    require_row(o, r, "residual", "mult:sigma,0.2," + std::to_string(k), 1e-10, &worst);
  }
  const ExtScanReport& s = r.scan;
  o.require(s.grid.shape == GridShape::Annulus, "scan is not on an annulus");
  auto near_powers = [](cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (int m = -6; m <= 6; ++m) d = std::min(d, std::abs(z - std::pow(0.5, m)));
    return d;
  };
  const std::size_t off = flags_outside(s, near_powers);
  o.require(off == 0, std::to_string(off) + " flags away from {0.5^n : |n| <= 6}");
  std::size_t missed = 0;
  for (int m = -6; m <= 6; ++m) {
    const double p = std::pow(0.5, m);
    if (p < s.grid.rmin || p > s.grid.rmax) continue;
    const bool hit = std::any_of(s.candidates.begin(), s.candidates.end(),
                                 [&](const ExtCandidate& c) { return c.flagged && std::abs(c.lambda - p) <= 1.5 * c.step; });
    missed += !hit;
  }
  o.require(missed == 0, std::to_string(missed) + " powers of 0.5 without a flag");
  if (trend) {
    for (std::size_t n : {32u, 64u}) trend->push_back(trend_of(verify_theorem_suite(kLox, b, n)));
  }
  if (o.pass) o.detail = "worst residual " + sci(worst) + ", " + std::to_string(s.clusters.size()) + " clusters";
  return o;
}

Outcome criterion5(std::vector<Trend>* trend) {
  Outcome o;
  const SpaceSpec b = SpaceSpec::bergman();
  VerifyOptions opt;
  opt.grid = GridSpec{GridShape::Annulus, 2000, 0.2, 5.0};
  const VerifyReport r = verify_theorem_suite(kHA, b, 64, opt);
  double sworst = 0.0;
  for (const char* w : {"i", "2i", "-i"}) require_row(o, r, "series", std::string("mult:cayley,") + w, 1e-8, &sworst);
  double rworst = 0.0;
  require_row(o, r, "residual", "mult:cayley,i", 1e-6, &rworst);
  const VerifyRow* row = row_of(r, "residual", "mult:cayley,i");
  o.require(row && row->margin == 32, "residual not measured at m = N/2");
  const ExtScanReport& s = r.scan;
  o.require(s.candidates.size() >= 2000, "annulus grid has fewer than 2000 nodes");
  const std::size_t off = flags_outside(s, [](cplx z) { return std::abs(std::abs(z) - 1.0); });
  o.require(off == 0, std::to_string(off) + " flags off the unit circle");
  o.require(s.flagged_count() > 0, "no flags at all");
  if (trend) {
    for (std::size_t n : {32u, 64u}) trend->push_back(trend_of(verify_theorem_suite(kHA, b, n, opt)));
  }
  if (o.pass) {
    o.detail = "series " + sci(sworst) + ", M_{e_i} residual " + sci(rworst) + ", " + std::to_string(s.flagged_count()) +
               " flags, all on the circle";
  }
  return o;
}

Outcome criterion6(std::vector<Trend>* trend) {
  Outcome o;
  const SpaceSpec b = SpaceSpec::bergman();
  const VerifyReport r = verify_theorem_suite(kHNA1, b, 128);
  double sworst = 0.0, rworst = 0.0;
  for (const char* w : {"1", "2", "0.5+3i"}) {
    require_row(o, r, "series", std::string("mult:binomial,") + w, 1e-9, &sworst);
    require_row(o, r, "residual", std::string("mult:binomial,") + w, 1e-6, &rworst);
  }
  const ExtScanReport& s = r.scan;
  o.require(s.grid.shape == GridShape::Disk, "scan is not on a disk");
  std::size_t outside = 0;
  for (const auto& c : s.candidates) {
    if (c.flagged && (std::abs(c.lambda) > 1.0 + c.step * (1.0 + 1e-9) || c.lambda == cplx(0.0))) ++outside;
  }
  o.require(outside == 0, std::to_string(outside) + " flags outside the closed disk");
  for (cplx w : {cplx(1.0), cplx(2.0), cplx(0.5, 3.0)}) {
    o.require(probe_flagged(s, std::pow(cplx(0.5), w)), "interior point 0.5^w not flagged");
  }
  if (trend) {
    for (std::size_t n : {32u, 64u, 128u}) {
      trend->push_back(n == 128 ? trend_of(r) : trend_of(verify_theorem_suite(kHNA1, b, n)));
    }
  }
  if (o.pass) {
    o.detail = "series " + sci(sworst) + ", M_{e_w} worst " + sci(rworst) + ", " + std::to_string(s.flagged_count()) +
               " flags within the disk";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const VerifyReport r = verify_theorem_suite(kPAmap, SpaceSpec::bergman(), 64);
  double sworst = 0.0;
  for (const char* t : {"0", "1", "2"}) require_row(o, r, "series", std::string("mult:parabolic,") + t, 1e-7, &sworst);
  for (double t : {0.0, 1.0, 2.0}) {
    const VerifyRow* row = row_of(r, "series", "mult:parabolic," + std::string(t == 0.0 ? "0" : t == 1.0 ? "1" : "2"));
    o.require(row && std::abs(row->lambda - std::exp(-2.0 * I * t)) <= 1e-15, "eigenvalue is not e^{-2it}");
  }
  const ExtScanReport& s = r.scan;
  const std::size_t off = flags_outside(s, [](cplx z) { return std::abs(std::abs(z) - 1.0); });
  o.require(off == 0, std::to_string(off) + " flags off the unit circle");
  if (o.pass) o.detail = "series " + sci(sworst) + ", " + std::to_string(s.flagged_count()) + " flags, all on the circle";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const SpaceSpec b = SpaceSpec::bergman();
  std::size_t checks = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const OperatorMatrix a(b, random_diagonalizable(6, seed), "A");
    const OperatorMatrix partner(b, random_diagonalizable(6, seed + 1000), "B");
    const LemmaReport rep = lemma_suite(a, partner, 3.0 * I, seed);
    for (const auto& c : rep.checks) {
      ++checks;
      o.require(c.pass, "seed " + std::to_string(seed) + ": " + c.name + " " + sci(c.measure) + " (" + c.detail + ")");
    }
    const double s0 = sylvester_min_sv(a, 0.0);
    o.require(s0 > 1e-6, "seed " + std::to_string(seed) + ": 0 not excluded");
  }
  if (o.pass) o.detail = std::to_string(checks) + " checks over 10 seeded 6x6 draws";
  return o;
}

Outcome criterion9(const std::vector<std::pair<std::string, std::vector<Trend>>>& trends) {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& [name, series] : trends) {
    for (std::size_t i = 1; i < series.size(); ++i) {
      const Trend& lo = series[i - 1];
      const Trend& hi = series[i];
      for (std::size_t k = 0; k < hi.keys.size(); ++k) {
        const auto it = std::find(lo.keys.begin(), lo.keys.end(), hi.keys[k]);
        if (it == lo.keys.end()) continue;
        const double before = lo.values[static_cast<std::size_t>(it - lo.keys.begin())];
        const double after = hi.values[k];
        ++compared;
        if (after > std::max(before, kNoiseFloor)) {
          o.require(false, name + " " + hi.keys[k] + ": " + sci(before) + " -> " + sci(after));
        }
      }
    }
  }
  o.require(compared > 0, "nothing compared");
  if (o.pass) o.detail = std::to_string(compared) + " residuals non-increasing with N (floor " + sci(kNoiseFloor) + ")";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  };

  std::vector<std::pair<std::string, std::vector<Trend>>> trends(4);
  trends[0].first = "affine/fock";
  trends[1].first = "loxodromic/bergman";
  trends[2].first = "hyperbolic-automorphism/bergman";
  trends[3].first = "hna1/bergman";

  report(1, "elliptic symbol on Fock space", criterion1);
  report(2, "affine symbol on Fock space", [&] { return criterion2(&trends[0].second); });
  report(3, "elliptic symbol on Bergman space", criterion3);
  report(4, "loxodromic symbol on Bergman space", [&] { return criterion4(&trends[1].second); });
  report(5, "hyperbolic automorphism on Bergman space", [&] { return criterion5(&trends[2].second); });
  report(6, "HNA1 on Bergman space", [&] { return criterion6(&trends[3].second); });
  report(7, "parabolic automorphism on Bergman space", criterion7);
  report(8, "finite-matrix lemma suite", criterion8);
  report(9, "convergence in N", [&] { return criterion9(trends); });
  return failures == 0 ? 0 : 1;
}
