#include "compop/spaces.hpp"

#include <cmath>
#include <sstream>

namespace compop {

const char* to_string(SpaceKind kind) noexcept {
  switch (kind) {
    case SpaceKind::Hardy: return "hardy";
    case SpaceKind::Bergman: return "bergman";
    case SpaceKind::Fock: return "fock";
  }
  return "unknown";
}

SpaceSpec SpaceSpec::fock(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::ParamOutOfRange, "Fock space needs alpha > 0");
  }
  return SpaceSpec(SpaceKind::Fock, alpha);
}

SpaceSpec SpaceSpec::make(SpaceKind kind, double alpha) {
  switch (kind) {
    case SpaceKind::Hardy: return hardy();
    case SpaceKind::Bergman: return bergman();
    case SpaceKind::Fock: return fock(alpha);
  }
  return hardy();
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == SpaceKind::Fock) os << "(alpha=" << alpha_ << ")";
  return os.str();
}

namespace {

// log ||z^n||^2
double log_norm_sq(const SpaceSpec& space, std::size_t n) {
  const double x = static_cast<double>(n);
  switch (space.kind()) {
    case SpaceKind::Hardy: return 0.0;
    case SpaceKind::Bergman: return -std::log1p(x);
    case SpaceKind::Fock: return std::lgamma(x + 1.0) - x * std::log(space.alpha());
  }
  return 0.0;
}

}  // namespace

double monomial_norm(const SpaceSpec& space, std::size_t n) {
  switch (space.kind()) {
    case SpaceKind::Hardy: return 1.0;
    case SpaceKind::Bergman: return 1.0 / std::sqrt(static_cast<double>(n) + 1.0);
    case SpaceKind::Fock: return std::exp(0.5 * log_norm_sq(space, n));
  }
  return 1.0;
}

double norm_ratio(const SpaceSpec& space, std::size_t i, std::size_t j) {
  switch (space.kind()) {
    case SpaceKind::Hardy: return 1.0;
    case SpaceKind::Bergman:
      return std::sqrt((static_cast<double>(j) + 1.0) / (static_cast<double>(i) + 1.0));
    case SpaceKind::Fock: {
      if (i == j) return 1.0;
      // sqrt(i!/j! * alpha^(j-i)), summed term by term when close to keep it exact-ish
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      double r;
      if (hi - lo <= 16) {
        double prod = 1.0;
        for (std::size_t k = lo + 1; k <= hi; ++k) prod *= static_cast<double>(k) / space.alpha();
        r = std::sqrt(prod);
      } else {
        r = std::exp(0.5 * (log_norm_sq(space, hi) - log_norm_sq(space, lo)));
      }
      return i > j ? r : 1.0 / r;
    }
  }
  return 1.0;
}

std::vector<cplx> coeffs_to_coordinates(const PowerSeries& p, const SpaceSpec& space) {
  std::vector<cplx> out(p.order());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[k] * monomial_norm(space, k);
  return out;
}

PowerSeries coordinates_to_coeffs(const std::vector<cplx>& coords, const SpaceSpec& space) {
  std::vector<cplx> c(coords.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coords[k] / monomial_norm(space, k);
  return PowerSeries(std::move(c));
}

cplx inner_product(const PowerSeries& p, const PowerSeries& q, const SpaceSpec& space) {
  if (p.order() != q.order()) {
    throw Error(ErrorCode::OrderMismatch, "inner product of series with different orders");
  }
  cplx acc = 0.0;
  for (std::size_t k = 0; k < p.order(); ++k) {
    const double nk = monomial_norm(space, k);
    acc += p[k] * std::conj(q[k]) * (nk * nk);
  }
  return acc;
}

double norm(const PowerSeries& p, const SpaceSpec& space) {
  return std::sqrt(std::max(0.0, inner_product(p, p, space).real()));
}

PowerSeries reproducing_kernel_coeffs(const SpaceSpec& space, cplx w, std::size_t order) {
  if (space.is_disk_space() && !(std::abs(w) < 1.0)) {
    throw Error(ErrorCode::PointOutsideDomain, "kernel point must lie in the open unit disk");
  }
  std::vector<cplx> c(order, cplx(0.0));
  const cplx wb = std::conj(w);
  cplx power = 1.0;
  for (std::size_t k = 0; k < order; ++k) {
    switch (space.kind()) {
      case SpaceKind::Hardy: c[k] = power; break;
      case SpaceKind::Bergman: c[k] = power * static_cast<double>(k + 1); break;
      case SpaceKind::Fock: c[k] = power; break;
    }
    // Fock: alpha^k conj(w)^k / k! built incrementally.
    power *= space.kind() == SpaceKind::Fock ? wb * space.alpha() / static_cast<double>(k + 1) : wb;
  }
  return PowerSeries(std::move(c));
}

}  // namespace compop
