#include "compop/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace compop {

namespace {

Eigen::VectorXd singular_values(const Matrix& a) {
  if (a.size() == 0) return {};
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

}  // namespace

double spectral_norm(const Matrix& a) { return spectral_norm_estimate(a, 1e-13); }

double spectral_norm_estimate(const Matrix& a, double rel_tol) {
  if (a.rows() <= kDenseNormLimit && a.cols() <= kDenseNormLimit) {
    const Eigen::VectorXd s = singular_values(a);
    return s.size() == 0 ? 0.0 : s(0);
  }
  // Power iteration on a^* a; fixed start vector keeps the result reproducible.
  // Every iterate is a lower bound for the norm.
  Vector x = Vector::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
  double est = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const Vector y = a.adjoint() * (a * x);
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    const double next = std::sqrt(ny);
    x = y / ny;
    const bool converged = std::abs(next - est) <= rel_tol * next;
    est = next;
    if (converged) break;
  }
  return est;
}

double smallest_singular_value(const Matrix& a) {
  const Eigen::VectorXd s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

bool is_upper_triangular(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
      if (a(i, j) != cplx(0.0)) return false;
    }
  }
  return true;
}

std::vector<cplx> eigenvalues(const Matrix& a) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(a.rows()));
  if (is_upper_triangular(a)) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(a(i, i));
    return out;
  }
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

std::vector<EigenPair> eigenpairs(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/true);
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Vector v = es.eigenvectors().col(i);
    const double n = v.norm();
    if (n > 0.0) v /= n;
    out.push_back({es.eigenvalues()(i), std::move(v)});
  }
  return out;
}

SchurForm schur(const Matrix& a) {
  Eigen::ComplexSchur<Matrix> cs(a, /*computeU=*/true);
  return {cs.matrixU(), cs.matrixT()};
}

}  // namespace compop
