#include <doctest.h>

#include <cmath>
#include <random>

#include "compop/operators.hpp"
#include "oracles.hpp"

using namespace compop;

namespace {

const cplx I(0.0, 1.0);

double block_diff(const Matrix& a, const Matrix& b, Eigen::Index k) {
  return (a.topLeftCorner(k, k) - b.topLeftCorner(k, k)).cwiseAbs().maxCoeff();
}

double binom(int n, int k) { return std::round(oracle::factorial(n) / (oracle::factorial(k) * oracle::factorial(n - k))); }

Matrix unit(Eigen::Index n, Eigen::Index k) {
  Matrix v = Matrix::Zero(n, 1);
  v(k, 0) = 1.0;
  return v;
}

// Leading `block` of C_phi M_b - lambda M_b C_phi, built from order-m truncations.
double intertwining(const LinearFractionalMap& phi, const SpaceSpec& s, const PowerSeries& b, cplx lambda,
                    std::size_t m, std::size_t block, double* scale) {
  const OperatorMatrix c = composition_matrix(phi, s, m);
  const OperatorMatrix mb = multiplication_matrix(b, s, m);
  const Matrix r = c.entries() * mb.entries() - lambda * (mb.entries() * c.entries());
  *scale = op_norm(c) * op_norm(mb);
  const auto k = static_cast<Eigen::Index>(block);
  return spectral_norm(r.topLeftCorner(k, k));
}

}  // namespace

TEST_CASE("operator matrix basics") {
  CHECK_THROWS_AS(OperatorMatrix(SpaceSpec::hardy(), Matrix::Zero(2, 3), "bad"), Error);
  const OperatorMatrix id = identity_matrix(SpaceSpec::bergman(), 5);
  CHECK(id.order() == 5);
  CHECK(id(2, 2) == cplx(1.0));
  CHECK(leading_block(id, 3).order() == 3);
  CHECK_THROWS_AS(leading_block(id, 6), Error);
  CHECK_THROWS_AS(matmul(id, identity_matrix(SpaceSpec::hardy(), 5)), Error);
  CHECK_THROWS_AS(matmul(id, identity_matrix(SpaceSpec::bergman(), 4)), Error);
}

TEST_CASE("composition_matrix: rotations are diagonal") {
  const cplx w = std::polar(1.0, 0.8);
  for (const SpaceSpec& s : {SpaceSpec::hardy(), SpaceSpec::bergman(), SpaceSpec::fock(1.5)}) {
    const OperatorMatrix c = composition_matrix({w, 0, 0, 1}, s, 12);
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 12; ++j) {
        const cplx expected = i == j ? std::pow(w, static_cast<double>(i)) : cplx(0.0);
        CHECK(std::abs(c(i, j) - expected) < 1e-14);
      }
    }
  }
}

TEST_CASE("composition_matrix: HNA1 on Bergman against inner products") {
  const SpaceSpec s = SpaceSpec::bergman();
  const OperatorMatrix c = composition_matrix({0.5, 0.5, 0.0, 1.0}, s, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      // <phi^j / ||z^j||, z^i / ||z^i||> = [z^i] phi^j * ||z^i||^2 / (||z^i|| ||z^j||)
      const double coeff = i <= j ? binom(j, i) * std::pow(0.5, j) : 0.0;
      const double ni = monomial_norm(s, i), nj = monomial_norm(s, j);
      const double expected = coeff * ni * ni / (ni * nj);
      CHECK(std::abs(c(i, j) - expected) < 1e-14);
    }
  }
}

TEST_CASE("composition_matrix: HA on Hardy maps the Cayley power to a multiple of itself") {
  const std::size_t n = 32, m = 8 * n;
  const SpaceSpec s = SpaceSpec::hardy();
  const OperatorMatrix c = composition_matrix({1.0, 0.5, 0.5, 1.0}, s, m);
  const PowerSeries e = cayley_power(I, m);
  const PowerSeries ce = apply_to_series(c, e);
  const cplx lambda = std::exp(I * std::log(3.0));
  const auto ref = coeffs_to_coordinates(e, s), got = coeffs_to_coordinates(ce, s);
  double worst = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) worst = std::max(worst, std::abs(got[k] - lambda * ref[k]));
  CHECK(worst < 1e-10);
}

TEST_CASE("composition_matrix: admissibility") {
  CHECK_THROWS_AS(composition_matrix({2.0, 0.0, 0.0, 1.0}, SpaceSpec::hardy(), 8), Error);
  CHECK_THROWS_AS(composition_matrix({1.0, 0.0, 1.0, 0.5}, SpaceSpec::bergman(), 8), Error);
  // disk-only symbols are rejected on the Fock space
  CHECK_THROWS_AS(composition_matrix({1.0, 0.5, 0.5, 1.0}, SpaceSpec::fock(1.0), 8), Error);
  CHECK_THROWS_AS(composition_matrix({1.0, 1.0, 0.0, 1.0}, SpaceSpec::fock(1.0), 8), Error);
  CHECK_NOTHROW(composition_matrix({0.5, 3.0, 0.0, 1.0}, SpaceSpec::fock(1.0), 8));
  try {
    composition_matrix({2.0, 0.0, 0.0, 1.0}, SpaceSpec::bergman(), 8);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SymbolNotAdmissible);
  }
}

TEST_CASE("property: composition reverses order") {
  const std::size_t n = 32, m = 4 * n;
  struct Case {
    SpaceSpec s;
    LinearFractionalMap f1, f2;
  };
  const std::vector<Case> cases = {
      {SpaceSpec::hardy(), {1.0, 0.5, 0.5, 1.0}, {0.5, 0.5, 0.0, 1.0}},
      {SpaceSpec::bergman(), {0.4 * I, 0.1, 0.0, 1.0}, {1.0, 0.3 * I, -0.3 * I, 1.0}},
      {SpaceSpec::bergman(), {std::polar(1.0, 2.0), 0, 0, 1}, {1.0, 0.5, 0.5, 1.0}},
      {SpaceSpec::fock(1.0), {0.5, 1.0, 0.0, 1.0}, {0.7 * I, -0.5, 0.0, 1.0}},
  };
  for (const auto& cs : cases) {
    const Matrix lhs = composition_matrix(compose(cs.f1, cs.f2), cs.s, m).entries();
    const Matrix rhs = composition_matrix(cs.f2, cs.s, m).entries() * composition_matrix(cs.f1, cs.s, m).entries();
    CHECK(block_diff(lhs, rhs, n / 2) < 1e-8);
  }
}

TEST_CASE("multiplication_matrix") {
  for (const SpaceSpec& s : {SpaceSpec::hardy(), SpaceSpec::bergman(), SpaceSpec::fock(2.0)}) {
    const OperatorMatrix one = multiplication_matrix(PowerSeries::constant(1.0, 6), s, 6);
    CHECK(one.entries().isApprox(Matrix::Identity(6, 6)));
  }
  const OperatorMatrix hz = multiplication_matrix(PowerSeries::monomial(1, 6), SpaceSpec::hardy(), 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) CHECK(hz.entries()(i, j) == cplx(i == j + 1 ? 1.0 : 0.0));
  }
  const OperatorMatrix bz = multiplication_matrix(PowerSeries::monomial(1, 6), SpaceSpec::bergman(), 6);
  for (int j = 0; j + 1 < 6; ++j) CHECK(std::abs(bz.entries()(j + 1, j) - std::sqrt((j + 1.0) / (j + 2.0))) < 1e-15);
  CHECK(bz.entries().triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff() == 0.0);

  // M_b acts as multiplication on series
  std::mt19937 rng(31);
  std::normal_distribution<double> g;
  PowerSeries b(10), p(10);
  for (std::size_t k = 0; k < 10; ++k) {
    b[k] = cplx(g(rng), g(rng));
    p[k] = cplx(g(rng), g(rng));
  }
  const PowerSeries bp = apply_to_series(multiplication_matrix(b, SpaceSpec::bergman(), 10), p);
  const PowerSeries ref = mul(b, p);
  for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(bp[k] - ref[k]) < 1e-12);
}

TEST_CASE("property: multiplication matrices multiply like their symbols") {
  std::mt19937 rng(32);
  std::normal_distribution<double> g;
  for (const SpaceSpec& s : {SpaceSpec::hardy(), SpaceSpec::bergman(), SpaceSpec::fock(1.0)}) {
    PowerSeries b1(16), b2(16);
    for (std::size_t k = 0; k < 16; ++k) {
      b1[k] = cplx(g(rng), g(rng)) * std::pow(0.5, static_cast<double>(k));
      b2[k] = cplx(g(rng), g(rng)) * std::pow(0.5, static_cast<double>(k));
    }
    const Matrix lhs = multiplication_matrix(mul(b1, b2), s, 16).entries();
    const Matrix rhs = multiplication_matrix(b1, s, 16).entries() * multiplication_matrix(b2, s, 16).entries();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("basis shifts") {
  const SpaceSpec s = SpaceSpec::bergman();
  const OperatorMatrix x1 = basis_shift_matrix(1, s, 8);
  CHECK((x1.entries() * unit(8, 0)).norm() == 0.0);
  CHECK((x1.entries() * unit(8, 5) - unit(8, 4)).norm() == 0.0);
  CHECK_THROWS_AS(basis_shift_matrix(0, s, 8), Error);
  CHECK_THROWS_AS(basis_shift_matrix(8, s, 8), Error);
  CHECK(std::abs(op_norm(basis_shift_matrix(3, s, 8)) - 1.0) < 1e-14);

  const cplx w = std::polar(1.0, 0.6);
  const OperatorMatrix c = composition_matrix({w, 0, 0, 1}, s, 16);
  const OperatorMatrix x2 = basis_shift_matrix(2, s, 16);
  const Matrix r = c.entries() * x2.entries() - std::pow(w, -2.0) * (x2.entries() * c.entries());
  CHECK(r.cwiseAbs().maxCoeff() < 1e-15);

  for (std::size_t k = 1; k < 6; ++k) {
    for (std::size_t j = 1; k + j < 12; ++j) {
      const Matrix prod = basis_shift_matrix(k, s, 12).entries() * basis_shift_matrix(j, s, 12).entries();
      CHECK(prod == basis_shift_matrix(k + j, s, 12).entries());
    }
  }
}

TEST_CASE("sigma shifts") {
  const SpaceSpec b = SpaceSpec::bergman();
  // c = 0 is the unweighted coefficient shift, i.e. X_k up to the norm ratios
  const OperatorMatrix s0 = sigma_shift_matrix(0.0, 2, b, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const double expected = j == i + 2 ? norm_ratio(b, i, j) : 0.0;
      CHECK(std::abs(s0(i, j) - expected) < 1e-15);
    }
  }
  // sigma^2 -> sigma at c = 0.2
  const OperatorMatrix s1 = sigma_shift_matrix(0.2, 1, b, 6);
  const PowerSeries out = apply_to_series(s1, sigma_power(0.2, 2, 6));
  const PowerSeries expected = sigma_power(0.2, 1, 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(out[k] - expected[k]) < 1e-14);
  // every sigma power, against the definition in the sigma basis
  for (std::size_t k = 1; k <= 3; ++k) {
    const OperatorMatrix sk = sigma_shift_matrix(cplx(0.2, -0.3), k, b, 12);
    for (std::size_t m = 0; m < 12; ++m) {
      const PowerSeries got = apply_to_series(sk, sigma_power(cplx(0.2, -0.3), m, 12));
      const PowerSeries want = m < k ? PowerSeries(12) : sigma_power(cplx(0.2, -0.3), m - k, 12);
      for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-13);
    }
  }
  // sigma^0 -> 0
  const PowerSeries zero = apply_to_series(s1, PowerSeries::constant(1.0, 6));
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(zero[k]) < 1e-15);

  CHECK_THROWS_AS(sigma_shift_matrix(1.0, 1, b, 6), Error);
  CHECK_THROWS_AS(sigma_shift_matrix(0.2, 6, b, 6), Error);

  // intertwining with phi = 0.5(z - 0.2) + 0.2
  const std::size_t n = 32;
  const LinearFractionalMap phi(0.5, 0.1, 0.0, 1.0);
  const Matrix c = composition_matrix(phi, b, n).entries();
  const Matrix s = sigma_shift_matrix(0.2, 1, b, n).entries();
  const Matrix r = c * s - 2.0 * (s * c);
  CHECK(spectral_norm(r.topLeftCorner(n - 1, n - 1)) < 1e-10);
}

TEST_CASE("quasi-differential and quasi-multiplication") {
  const SpaceSpec f1 = SpaceSpec::fock(1.0);
  const OperatorMatrix d = quasi_diff_matrix(f1, 8);
  CHECK((d.entries() * unit(8, 0)).norm() == 0.0);
  CHECK((d.entries() * unit(8, 1) - unit(8, 0) / cplx(0.0, 2.0)).norm() < 1e-15);
  CHECK_THROWS_AS(quasi_diff_matrix(SpaceSpec::hardy(), 8), Error);
  CHECK_THROWS_AS(quasi_mult_matrix(SpaceSpec::bergman(), 8), Error);
  CHECK_THROWS_AS(shifted_quasi_mult(SpaceSpec::bergman(), 1.0, 8), Error);

  const std::size_t n = 32;
  const cplx w(0.3, 0.4);
  const Matrix c = composition_matrix({w, 1.0, 0.0, 1.0}, f1, n).entries();
  const Matrix dm = quasi_diff_matrix(f1, n).entries();
  CHECK(spectral_norm((c * dm - (dm * c) / w).topLeftCorner(n - 1, n - 1)) < 1e-10);

  for (double alpha : {1.0, 2.5}) {
    const SpaceSpec s = SpaceSpec::fock(alpha);
    const OperatorMatrix x = quasi_mult_matrix(s, 8);
    CHECK((x.entries() * unit(8, 0) - unit(8, 1) / std::sqrt(alpha)).norm() < 1e-15);
    const Matrix comm = x.entries().adjoint() * x.entries() - x.entries() * x.entries().adjoint();
    for (Eigen::Index k = 0; k + 1 < 8; ++k) CHECK((comm * unit(8, k) - unit(8, k) / alpha).norm() < 1e-14);
  }
  const OperatorMatrix x = quasi_mult_matrix(f1, 8);
  CHECK((x.entries() * unit(8, 2) - std::sqrt(3.0) * unit(8, 3)).norm() < 1e-15);
  CHECK(shifted_quasi_mult(f1, 0.0, 8).entries() == x.entries());
}

TEST_CASE("shifted quasi-multiplication intertwines affine Fock symbols") {
  const SpaceSpec f1 = SpaceSpec::fock(1.0);
  const std::size_t n = 32;
  const Matrix c = composition_matrix({0.5, 1.0, 0.0, 1.0}, f1, n).entries();
  const OperatorMatrix y = shifted_quasi_mult(f1, 2.0, n);
  const Matrix r1 = c * y.entries() - 0.5 * (y.entries() * c);
  CHECK(spectral_norm(r1.topLeftCorner(n - 1, n - 1)) <= 1e-10);
  const Matrix y3 = power(y, 3).entries();
  const Matrix r3 = c * y3 - 0.125 * (y3 * c);
  CHECK(spectral_norm(r3.topLeftCorner(n - 3, n - 3)) <= 1e-9);
}

TEST_CASE("adjoint, direct sum, norms") {
  const SpaceSpec s = SpaceSpec::hardy();
  const OperatorMatrix id = identity_matrix(s, 6);
  CHECK(adjoint(id).entries() == id.entries());
  const cplx w = std::polar(1.0, 1.3);
  const OperatorMatrix c = composition_matrix({w, 0, 0, 1}, s, 6);
  const OperatorMatrix ca = adjoint(c);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(ca(k, k) - std::pow(std::conj(w), static_cast<double>(k))) < 1e-14);
  const OperatorMatrix fwd = adjoint(basis_shift_matrix(1, s, 6));
  CHECK(fwd.entries() == multiplication_matrix(PowerSeries::monomial(1, 6), s, 6).entries());

  CHECK(direct_sum(identity_matrix(s, 2), identity_matrix(s, 3)).entries() == Matrix::Identity(5, 5));
  CHECK_THROWS_AS(direct_sum(id, identity_matrix(SpaceSpec::bergman(), 2)), Error);

  const Matrix a = oracle::random_matrix(5, 41), b = oracle::random_matrix(4, 42);
  const OperatorMatrix ds = direct_sum(OperatorMatrix(s, a, "A"), OperatorMatrix(s, b, "B"));
  auto ev = eigenvalues(ds.entries());
  std::vector<cplx> expected = eigenvalues(a);
  for (cplx z : eigenvalues(b)) expected.push_back(z);
  for (cplx z : expected) {
    double best = 1e300;
    for (cplx e : ev) best = std::min(best, std::abs(e - z));
    CHECK(best < 1e-10);
  }

  CHECK(std::abs(op_norm(id) - 1.0) < 1e-15);
  CHECK(std::abs(op_norm(c) - 1.0) < 1e-14);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const Matrix r = oracle::random_matrix(12, 50 + seed);
    CHECK(std::abs(op_norm(OperatorMatrix(s, r, "R")) - oracle::power_iteration_norm(r)) <= 1e-8 * oracle::power_iteration_norm(r));
  }
  CHECK(std::abs(op_norm(scaled(3.0 * I, id)) - 3.0) < 1e-14);
}

TEST_CASE("large norms go through the iterative path and stay below the true value") {
  const Matrix r = oracle::random_matrix(300, 61);
  const double dense = Eigen::BDCSVD<Matrix>(r).singularValues()(0);
  const double est = spectral_norm(r);
  CHECK(est <= dense * (1.0 + 1e-12));
  CHECK(est >= dense * (1.0 - 1e-10));
}

TEST_CASE("property: multiplication by eigenfunctions intertwines") {
  const std::size_t n = 32, m = 8 * n, half = n / 2;
  struct Case {
    const char* name;
    LinearFractionalMap phi;
    SpaceSpec s;
    PowerSeries b;
    cplx lambda;
  };
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 7.0);
  const cplx bw(0.5, 3.0), cw(0.0, 1.0), pa_a(0.0, 2.0);
  const cplx lox(0.3, 0.3);
  const std::vector<Case> cases = {
      {"monomial", {w, 0, 0, 1}, SpaceSpec::bergman(), PowerSeries::monomial(3, m), std::pow(w, 3.0)},
      {"binomial", {0.5, 0.5, 0.0, 1.0}, SpaceSpec::bergman(), binomial_power(bw, m), std::exp(bw * std::log(0.5))},
      {"cayley", {1.0, 0.5, 0.5, 1.0}, SpaceSpec::hardy(), cayley_power(cw, m), std::exp(cw * std::log(3.0))},
      {"parabolic", {2.0 - pa_a, pa_a, -pa_a, 2.0 + pa_a}, SpaceSpec::bergman(), parabolic_eigenfunction(1.0, m),
       std::exp(-pa_a)},
      {"sigma", {lox, 0.1 * (1.0 - lox), 0.0, 1.0}, SpaceSpec::bergman(), sigma_power(0.1, 2, m), lox * lox},
  };
  for (const auto& cs : cases) {
    CAPTURE(cs.name);
    const PowerSeries lhs = compose_series(cs.b, cs.phi, n);
    double worst = 0.0;
    for (std::size_t k = 0; k < half; ++k) worst = std::max(worst, std::abs(lhs[k] - cs.lambda * cs.b[k]));
    REQUIRE(worst < 1e-8);
    double scale = 0.0;
    const double res = intertwining(cs.phi, cs.s, cs.b, cs.lambda, m, half, &scale);
    CHECK(res <= 1e-8 * scale);
  }
}
