#include "compop/operators.hpp"

#include <cmath>
#include <sstream>

namespace compop {

namespace {

using Index = Eigen::Index;

Index as_index(std::size_t n) { return static_cast<Index>(n); }

void require_same(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space() == b.space()) || a.order() != b.order()) {
    throw Error(ErrorCode::DimensionMismatch, "operands differ in space or order");
  }
}

void require_fock(const SpaceSpec& space, const char* what) {
  if (space.kind() != SpaceKind::Fock) {
    throw Error(ErrorCode::WrongSpace, std::string(what) + " is defined on the Fock space only");
  }
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

OperatorMatrix::OperatorMatrix(SpaceSpec space, Matrix entries, std::string label)
    : space_(space), entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operator matrix must be square");
  }
}

OperatorMatrix composition_matrix(const LinearFractionalMap& phi, const SpaceSpec& space,
                                  std::size_t order) {
  if (space.kind() == SpaceKind::Fock) {
    if (!is_fock_symbol(phi)) {
      throw Error(ErrorCode::SymbolNotAdmissible,
                  "C_phi on the Fock space needs phi(z) = az + b with |a| < 1, or |a| = 1, b = 0");
    }
  } else {
    const bool pole_ok = phi.is_affine() || std::abs(phi.d() / phi.c()) > 1.0 + 1e-12;
    if (!pole_ok || !is_self_map_of_disk(phi)) {
      throw Error(ErrorCode::SymbolNotAdmissible, "phi is not a self-map of the unit disk");
    }
  }
  const Index n = as_index(order);
  Matrix m = Matrix::Zero(n, n);
  std::vector<cplx> p(order, cplx(0.0));
  if (order > 0) p[0] = 1.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (p[static_cast<std::size_t>(i)] != cplx(0.0)) {
        m(i, j) = p[static_cast<std::size_t>(i)] *
                  norm_ratio(space, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
    multiply_by_lft(p, phi);
  }
  return OperatorMatrix(space, std::move(m), "C_phi");
}

OperatorMatrix multiplication_matrix(const PowerSeries& b, const SpaceSpec& space,
                                     std::size_t order) {
  const Index n = as_index(order);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < order; ++j) {
    for (std::size_t i = j; i < order && i - j < b.order(); ++i) {
      const cplx bk = b[i - j];
      if (bk != cplx(0.0)) m(as_index(i), as_index(j)) = bk * norm_ratio(space, i, j);
    }
  }
  return OperatorMatrix(space, std::move(m), "M_b");
}

OperatorMatrix identity_matrix(const SpaceSpec& space, std::size_t order) {
  return OperatorMatrix(space, Matrix::Identity(as_index(order), as_index(order)), "I");
}

OperatorMatrix basis_shift_matrix(std::size_t k, const SpaceSpec& space, std::size_t order) {
  if (k < 1 || k >= order) throw Error(ErrorCode::BadShift, "basis shift needs 1 <= k < N");
  const Index n = as_index(order);
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i + as_index(k) < n; ++i) m(i, i + as_index(k)) = 1.0;
  return OperatorMatrix(space, std::move(m), "X_" + std::to_string(k));
}

OperatorMatrix sigma_shift_matrix(cplx center, std::size_t k, const SpaceSpec& space,
                                  std::size_t order) {
  if (!(std::abs(center) < 1.0)) {
    throw Error(ErrorCode::CenterOutsideDisk, "sigma shift needs |c| < 1");
  }
  if (k < 1 || k >= order) throw Error(ErrorCode::BadShift, "sigma shift needs 1 <= k < N");
  const Index n = as_index(order);
  // S in raw monomial coefficients: column m holds (z^m - c^m)/(z - c).
  Matrix s1 = Matrix::Zero(n, n);
  for (Index col = 1; col < n; ++col) {
    cplx pw = 1.0;
    for (Index i = col - 1; i >= 0; --i) {
      s1(i, col) = pw;
      pw *= center;
    }
  }
  Matrix sk = s1;
  for (std::size_t step = 1; step < k; ++step) sk = (s1 * sk).eval();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      sk(i, j) *= norm_ratio(space, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return OperatorMatrix(space, std::move(sk), "S_sigma(c=" + fmt(center) + ",k=" + std::to_string(k) + ")");
}

OperatorMatrix quasi_diff_matrix(const SpaceSpec& space, std::size_t order) {
  require_fock(space, "quasi-differential operator");
  const double alpha = space.alpha();
  const Index n = as_index(order);
  Matrix m = Matrix::Zero(n, n);
  const cplx denom(0.0, 2.0 * alpha);
  for (Index k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k) * alpha) / denom;
  return OperatorMatrix(space, std::move(m), "D");
}

OperatorMatrix quasi_mult_matrix(const SpaceSpec& space, std::size_t order) {
  require_fock(space, "quasi-multiplication operator");
  const double alpha = space.alpha();
  const Index n = as_index(order);
  Matrix m = Matrix::Zero(n, n);
  for (Index k = 0; k + 1 < n; ++k) m(k + 1, k) = std::sqrt(static_cast<double>(k + 1) / alpha);
  return OperatorMatrix(space, std::move(m), "X");
}

OperatorMatrix shifted_quasi_mult(const SpaceSpec& space, cplx tau, std::size_t order) {
  OperatorMatrix x = quasi_mult_matrix(space, order);
  Matrix m = x.entries();
  m.diagonal().array() -= tau;
  return OperatorMatrix(space, std::move(m), "X-" + fmt(tau) + "I");
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  return OperatorMatrix(a.space(), a.entries().adjoint(), a.label() + "^*");
}

OperatorMatrix direct_sum(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space() == b.space())) {
    throw Error(ErrorCode::DimensionMismatch, "direct sum of operators on different spaces");
  }
  const Index na = a.entries().rows(), nb = b.entries().rows();
  Matrix m = Matrix::Zero(na + nb, na + nb);
  m.topLeftCorner(na, na) = a.entries();
  m.bottomRightCorner(nb, nb) = b.entries();
  return OperatorMatrix(a.space(), std::move(m), a.label() + "(+)" + b.label());
}

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.space(), a.entries() * b.entries(), a.label() + "*" + b.label());
}

OperatorMatrix power(const OperatorMatrix& a, std::size_t k) {
  Matrix m = Matrix::Identity(a.entries().rows(), a.entries().cols());
  for (std::size_t i = 0; i < k; ++i) m = (m * a.entries()).eval();
  return OperatorMatrix(a.space(), std::move(m), "(" + a.label() + ")^" + std::to_string(k));
}

OperatorMatrix scaled(cplx s, const OperatorMatrix& a) {
  return OperatorMatrix(a.space(), s * a.entries(), fmt(s) + "*" + a.label());
}

OperatorMatrix leading_block(const OperatorMatrix& a, std::size_t size) {
  if (size > a.order()) throw Error(ErrorCode::DimensionMismatch, "block larger than operator");
  return OperatorMatrix(a.space(), a.entries().topLeftCorner(as_index(size), as_index(size)),
                        a.label());
}

double op_norm(const OperatorMatrix& a) { return spectral_norm(a.entries()); }

PowerSeries apply_to_series(const OperatorMatrix& a, const PowerSeries& p) {
  if (p.order() != a.order()) {
    throw Error(ErrorCode::OrderMismatch, "series order differs from operator order");
  }
  const std::vector<cplx> coords = coeffs_to_coordinates(p, a.space());
  const Vector x = Eigen::Map<const Vector>(coords.data(), as_index(coords.size()));
  const Vector y = a.entries() * x;
  return coordinates_to_coeffs(std::vector<cplx>(y.data(), y.data() + y.size()), a.space());
}

}  // namespace compop
