#include "compop/series.hpp"

#include <algorithm>
#include <cmath>

namespace compop {

namespace {

void require_same_order(const PowerSeries& p, const PowerSeries& q) {
  if (p.order() != q.order()) {
    throw Error(ErrorCode::OrderMismatch, "power series orders differ");
  }
}

void require_pole_outside_disk(const LinearFractionalMap& f) {
  if (!f.is_affine() && !(std::abs(f.d() / f.c()) > 1.0 + 1e-12)) {
    throw Error(ErrorCode::PoleInsideDisk, "pole -d/c lies in the closed unit disk");
  }
}

}  // namespace

PowerSeries::PowerSeries(std::size_t order) : coeffs_(order, cplx(0.0)) {}

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {}

PowerSeries::PowerSeries(std::initializer_list<cplx> coeffs, std::size_t order)
    : coeffs_(order, cplx(0.0)) {
  std::size_t k = 0;
  for (cplx c : coeffs) {
    if (k == order) break;
    coeffs_[k++] = c;
  }
}

PowerSeries PowerSeries::constant(cplx value, std::size_t order) {
  PowerSeries p(order);
  if (order > 0) p.coeffs_[0] = value;
  return p;
}

PowerSeries PowerSeries::monomial(std::size_t n, std::size_t order) {
  PowerSeries p(order);
  if (n < order) p.coeffs_[n] = 1.0;
  return p;
}

PowerSeries PowerSeries::resized(std::size_t order) const {
  std::vector<cplx> c(order, cplx(0.0));
  std::copy_n(coeffs_.begin(), std::min(order, coeffs_.size()), c.begin());
  return PowerSeries(std::move(c));
}

cplx PowerSeries::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries add(const PowerSeries& p, const PowerSeries& q) {
  require_same_order(p, q);
  std::vector<cplx> c(p.order());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p[k] + q[k];
  return PowerSeries(std::move(c));
}

PowerSeries sub(const PowerSeries& p, const PowerSeries& q) {
  require_same_order(p, q);
  std::vector<cplx> c(p.order());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p[k] - q[k];
  return PowerSeries(std::move(c));
}

PowerSeries scalar_mul(cplx s, const PowerSeries& p) {
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  for (cplx& x : c) x *= s;
  return PowerSeries(std::move(c));
}

PowerSeries mul(const PowerSeries& p, const PowerSeries& q) {
  require_same_order(p, q);
  const std::size_t n = p.order();
  std::vector<cplx> c(n, cplx(0.0));
  const auto pc = p.coeffs();
  const auto qc = q.coeffs();
  for (std::size_t i = 0; i < n; ++i) {
    if (pc[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += pc[i] * qc[j];
  }
  return PowerSeries(std::move(c));
}

PowerSeries derivative(const PowerSeries& p) {
  const std::size_t n = p.order();
  std::vector<cplx> c(n, cplx(0.0));
  for (std::size_t k = 1; k < n; ++k) c[k - 1] = static_cast<double>(k) * p[k];
  return PowerSeries(std::move(c));
}

PowerSeries reciprocal(const PowerSeries& p) {
  const std::size_t n = p.order();
  if (n == 0 || std::abs(p[0]) <= 1e-14) {
    throw Error(ErrorCode::ZeroConstantTerm, "reciprocal needs a nonzero constant term");
  }
  std::vector<cplx> r(n, cplx(0.0));
  const cplx inv0 = 1.0 / p[0];
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += p[j] * r[k - j];
    r[k] = -acc * inv0;
  }
  return PowerSeries(std::move(r));
}

PowerSeries exp_series(const PowerSeries& p) {
  const std::size_t n = p.order();
  std::vector<cplx> f(n, cplx(0.0));
  if (n == 0) return PowerSeries(std::move(f));
  f[0] = std::exp(p[0]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += static_cast<double>(j + 1) * p[j + 1] * f[k - j];
    f[k + 1] = acc / static_cast<double>(k + 1);
  }
  return PowerSeries(std::move(f));
}

void multiply_by_lft(std::vector<cplx>& p, const LinearFractionalMap& f) {
  const std::size_t n = p.size();
  if (n == 0) return;
  // p <- p (a z + b), top-down so p[k-1] is still the old value.
  for (std::size_t k = n; k-- > 0;) {
    p[k] = f.b() * p[k] + (k > 0 ? f.a() * p[k - 1] : cplx(0.0));
  }
  // p <- p / (d + c z)
  const cplx inv_d = 1.0 / f.d();
  if (f.is_affine()) {
    for (cplx& x : p) x *= inv_d;
    return;
  }
  p[0] *= inv_d;
  for (std::size_t k = 1; k < n; ++k) p[k] = (p[k] - f.c() * p[k - 1]) * inv_d;
}

PowerSeries lft_taylor(const LinearFractionalMap& f, std::size_t order) {
  require_pole_outside_disk(f);
  std::vector<cplx> p(order, cplx(0.0));
  if (order > 0) p[0] = 1.0;
  multiply_by_lft(p, f);
  return PowerSeries(std::move(p));
}

PowerSeries binomial_power(cplx w, std::size_t order) {
  std::vector<cplx> c(order, cplx(0.0));
  if (order == 0) return PowerSeries(std::move(c));
  c[0] = 1.0;
  for (std::size_t n = 0; n + 1 < order; ++n) {
    c[n + 1] = c[n] * (static_cast<double>(n) - w) / static_cast<double>(n + 1);
  }
  return PowerSeries(std::move(c));
}

PowerSeries cayley_power(cplx w, std::size_t order) {
  std::vector<cplx> c(order, cplx(0.0));
  if (order == 0) return PowerSeries(std::move(c));
  c[0] = 1.0;
  if (order > 1) c[1] = 2.0 * w;
  for (std::size_t n = 1; n + 1 < order; ++n) {
    c[n + 1] = (2.0 * w * c[n] + static_cast<double>(n - 1) * c[n - 1]) /
               static_cast<double>(n + 1);
  }
  return PowerSeries(std::move(c));
}

PowerSeries parabolic_eigenfunction(double t, std::size_t order) {
  if (t < 0.0) {
    throw Error(ErrorCode::NegativeParameter, "parabolic eigenfunction needs t >= 0");
  }
  // -t (1 + z)/(1 - z) = -t - 2t (z + z^2 + ...)
  std::vector<cplx> p(order, cplx(-2.0 * t));
  if (order > 0) p[0] = -t;
  return exp_series(PowerSeries(std::move(p)));
}

PowerSeries sigma_power(cplx center, std::size_t k, std::size_t order) {
  std::vector<cplx> c(order, cplx(0.0));
  // binomial coefficients of (z - center)^k by repeated multiplication
  std::vector<cplx> acc(k + 1, cplx(0.0));
  acc[0] = 1.0;
  for (std::size_t step = 0; step < k; ++step) {
    for (std::size_t i = step + 2; i-- > 0;) {
      acc[i] = (i > 0 ? acc[i - 1] : cplx(0.0)) - center * acc[i];
    }
  }
  for (std::size_t i = 0; i <= k && i < order; ++i) c[i] = acc[i];
  return PowerSeries(std::move(c));
}

PowerSeries compose_series(const PowerSeries& g, const LinearFractionalMap& f, std::size_t order) {
  if (g.order() < order) {
    throw Error(ErrorCode::OrderMismatch, "compose_series needs g.order() >= order");
  }
  require_pole_outside_disk(f);
  std::vector<cplx> r(order, cplx(0.0));
  if (order == 0) return PowerSeries(std::move(r));
  for (std::size_t k = g.order(); k-- > 0;) {
    multiply_by_lft(r, f);
    r[0] += g[k];
  }
  return PowerSeries(std::move(r));
}

}  // namespace compop
