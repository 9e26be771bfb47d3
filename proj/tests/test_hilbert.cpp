#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "spinmode/hilbert.hpp"

using namespace spinmode;
using namespace std::complex_literals;

namespace {

Matrix random_density(Eigen::Index dim, unsigned seed) {
  // deterministic pseudo-random positive matrix with unit trace
  Matrix a(dim, dim);
  unsigned state = seed;
  auto next = [&state] {
    state = state * 1664525u + 1013904223u;
    return double(state >> 8) / double(1u << 24) - 0.5;
  };
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(next(), next());
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("pauli matrices satisfy their product algebra") {
  CHECK((sigma_x() * sigma_y() - 1i * sigma_z()).norm() == doctest::Approx(0.0));
  CHECK((sigma_y() * sigma_z() - 1i * sigma_x()).norm() == doctest::Approx(0.0));
  CHECK((sigma_plus() - 0.5 * (sigma_x() + 1i * sigma_y())).norm() == doctest::Approx(0.0));
  CHECK((sigma_plus() * Vector::Unit(2, 1) - Vector::Unit(2, 0)).norm() ==
        doctest::Approx(0.0));
  CHECK((sigma_x() * sigma_x() - identity(2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("mode operators act as truncated ladder operators") {
  const int n_max = 7;
  const Matrix a = annihilation(n_max);
  const Matrix n = number_operator(n_max);
  for (int k = 1; k <= n_max; ++k) {
    Vector fock = Vector::Zero(n_max + 1);
    fock(k) = 1.0;
    CHECK((a * fock - std::sqrt(double(k)) * Vector::Unit(n_max + 1, k - 1)).norm() ==
          doctest::Approx(0.0));
    CHECK(std::abs(cplx(n(k, k)) - cplx(double(k))) == doctest::Approx(0.0));
  }
  // the commutator stays canonical except at the truncation corner
  Matrix comm = a * creation(n_max) - creation(n_max) * a;
  CHECK(std::abs(comm(n_max, n_max) - cplx(-double(n_max))) < 1e-12);
  comm(n_max, n_max) = 1.0;
  CHECK((comm - identity(n_max + 1)).norm() < 1e-12);
}

TEST_CASE("tensor product matches an explicit kronecker loop") {
  const Matrix s = random_density(2, 11);
  const Matrix m = random_density(4, 12);
  const Matrix t = tensor(s, m);
  REQUIRE(t.rows() == 8);
  for (int si = 0; si < 2; ++si)
    for (int sj = 0; sj < 2; ++sj)
      for (int mi = 0; mi < 4; ++mi)
        for (int mj = 0; mj < 4; ++mj)
          CHECK(std::abs(t(si * 4 + mi, sj * 4 + mj) - s(si, sj) * m(mi, mj)) < 1e-15);
}

TEST_CASE("partial trace undoes the tensor product") {
  const Matrix s = random_density(2, 21);
  const Matrix m = random_density(6, 22);
  CHECK((partial_trace_mode(tensor(s, m), 5) - s).norm() < 1e-14);
}

TEST_CASE("partial trace is linear and trace preserving on entangled states") {
  const int n_max = 3;
  Matrix rho = random_density(2 * (n_max + 1), 31);
  const Matrix red = partial_trace_mode(rho, n_max);
  CHECK(std::abs(red.trace() - 1.0) < 1e-14);
  CHECK(hermitian_defect(red) < 1e-14);
  // diagonal entries accumulate the mode populations of each spin block
  cplx up = 0.0;
  for (int k = 0; k <= n_max; ++k) up += rho(k, k);
  CHECK(std::abs(red(0, 0) - up) < 1e-14);
}

TEST_CASE("trace distance reproduces the pure state overlap formula") {
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_distance(zero, plus) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  Matrix one = Matrix::Zero(2, 2);
  one(1, 1) = 1.0;
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
}

TEST_CASE("expectation values of diagonal states are classical averages") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  CHECK(expectation(sigma_z(), rho) == doctest::Approx(0.4));
  Matrix coherent = rho;
  coherent(0, 1) = cplx(0.0, -0.3);
  coherent(1, 0) = cplx(0.0, 0.3);
  CHECK_THROWS_AS((void)expectation(sigma_plus(), coherent), std::runtime_error);
}

TEST_CASE("density matrix guard rejects broken inputs") {
  CHECK_NOTHROW(require_density_matrix(random_density(5, 41)));
  CHECK_THROWS_AS(require_density_matrix(2.0 * random_density(3, 42)), std::invalid_argument);
  Matrix notherm = random_density(3, 43);
  notherm(0, 1) += 0.1;
  CHECK_THROWS_AS(require_density_matrix(notherm), std::invalid_argument);
}

TEST_CASE("propagator of the bare spin is the textbook phase") {
  const double omega = 2.0 * std::numbers::pi * 1.3e6;
  const Propagator prop(0.5 * omega * sigma_z());
  const double t = 0.37e-6;
  const Matrix u = prop.unitary(t);
  CHECK(std::abs(u(0, 0) - std::exp(-0.5i * omega * t)) < 1e-12);
  CHECK(std::abs(u(1, 1) - std::exp(0.5i * omega * t)) < 1e-12);
  CHECK(std::abs(u(0, 1)) == doctest::Approx(0.0));
  CHECK((prop.unitary(2.0 * t) - u * u).norm() < 1e-12);
  CHECK((hermitian_propagator(0.5 * omega * sigma_z(), t) - u).norm() < 1e-13);
}

TEST_CASE("propagation preserves density matrix structure") {
  Matrix h = sigma_x() * 2.0 + sigma_z() * 0.7;
  const Propagator prop(h);
  const Matrix rho = random_density(2, 51);
  const Matrix out = prop.evolve(rho, 1.234);
  CHECK(std::abs(out.trace() - 1.0) < 1e-13);
  CHECK(hermitian_defect(out) < 1e-13);
  CHECK(trace_distance(prop.evolve(out, -1.234), rho) < 1e-12);
}

TEST_CASE("displacement matrix elements match the coherent state formula") {
  const double eta = 0.3;
  const Matrix d = displacement_exponential(eta, 25);
  // <m|exp(i eta (a'+a))|0> = (i eta)^m exp(-eta^2/2)/sqrt(m!)
  cplx expected = std::exp(-0.5 * eta * eta);
  double factorial = 1.0;
  for (int m = 0; m <= 4; ++m) {
    CHECK(std::abs(d(m, 0) - expected / std::sqrt(factorial)) < 1e-12);
    expected *= 1i * eta;
    factorial *= double(m + 1);
  }
}

TEST_CASE("displacement is unitary away from the truncation edge") {
  const int n_max = 30;
  const Matrix d = displacement_exponential(0.4, n_max);
  const Matrix defect = d.adjoint() * d - identity(n_max + 1);
  for (int col = 0; col <= n_max / 2; ++col)
    CHECK(defect.col(col).norm() < 1e-8);
  CHECK(hermitian_defect(d * d.adjoint()) < 1e-10);
}

TEST_CASE("tail population isolates the top two fock levels") {
  const int n_max = 4;
  Matrix rho = Matrix::Zero(2 * (n_max + 1), 2 * (n_max + 1));
  rho(n_max, n_max) = 0.25;                          // |up, n_max>
  rho(n_max + 1 + n_max, n_max + 1 + n_max) = 0.2;   // |down, n_max>
  rho(n_max - 1, n_max - 1) = 0.05;                  // |up, n_max - 1>
  rho(0, 0) = 0.5;
  CHECK(mode_tail_population(rho, n_max) == doctest::Approx(0.5));
}
