#include <doctest.h>

#include <cmath>

#include "holo/cones.hpp"
#include "holo/rng.hpp"

using namespace holo;

TEST_CASE("scalar cone membership") {
  const ConeParams d01(0.1);
  CHECK(in_right_cone(Complex(1.0, 0.0), d01));
  CHECK(in_right_cone(Complex(1.0, 0.05), d01));
  CHECK_FALSE(in_right_cone(Complex(1.0, 0.2), d01));
  CHECK_FALSE(in_right_cone(Complex(-1.0, 0.0), d01));
  CHECK_FALSE(in_right_cone(Complex(0.0, 0.0), d01));
  CHECK(right_cone_margin(Complex(1.0, 0.05), d01) == doctest::Approx(0.05));
  CHECK(right_cone_margin(Complex(1.0, 0.2), d01) == doctest::Approx(-0.1));
}

TEST_CASE("cone params validate the aperture") {
  CHECK_THROWS_AS(ConeParams(0.0), InvalidInputError);
  CHECK_THROWS_AS(ConeParams(1.0), InvalidInputError);
  CHECK_THROWS_AS(ConeParams(-0.5), InvalidInputError);
  CHECK_NOTHROW(ConeParams(0.999));
}

TEST_CASE("vector cone membership") {
  const ConeParams half(0.5);
  VectorXcd z(2);
  z << Complex(0.0, 1.0), Complex(0.0, 0.0);
  CHECK_FALSE(in_vector_cone(z, half));

  z << Complex(1.0, 0.2), Complex(1.0, -0.2);
  // ||Im|| = 0.2 sqrt(2) < 0.5 sqrt(2)
  CHECK(in_vector_cone(z, half));
  CHECK(vector_cone_margin(z, half) ==
        doctest::Approx(0.5 * std::sqrt(2.0) - 0.2 * std::sqrt(2.0)));
}

TEST_CASE("matrix cone in both norms") {
  const ConeParams op(0.1);
  const ConeParams fro(0.1, MatrixNorm::Frobenius);
  MatrixXcd a = MatrixXcd::Identity(2, 2);
  a(0, 0) += Complex(0.0, 0.05);
  CHECK(in_matrix_cone(a, op));

  // ||Im||_2 = 0.12 > 0.1 but ||Im||_F = 0.12 < 0.1 sqrt(2)
  MatrixXcd b = MatrixXcd::Identity(2, 2);
  b(0, 0) += Complex(0.0, 0.12);
  CHECK_FALSE(in_matrix_cone(b, op));
  CHECK(in_matrix_cone(b, fro));
}

TEST_CASE("symmetric cone membership and witnesses") {
  const ConeParams d01(0.1);
  MatrixXcd good = MatrixXcd::Identity(2, 2);
  good(0, 0) += Complex(0.0, 0.05);
  good(1, 1) += Complex(0.0, -0.05);
  CHECK(in_symmetric_cone(good, d01));
  CHECK_FALSE(quadratic_form_witness(good, d01, 50, 1).has_value());

  MatrixXcd bad = MatrixXcd::Identity(2, 2);
  bad(0, 0) += Complex(0.0, 0.2);
  bad(1, 1) += Complex(0.0, 0.2);
  CHECK_FALSE(in_symmetric_cone(bad, d01));
  const auto w = quadratic_form_witness(bad, d01, 0, 1);
  REQUIRE(w.has_value());
  CHECK(w->value.real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w->value.imag() == doctest::Approx(0.2).epsilon(1e-9));
  CHECK_FALSE(in_right_cone(w->value, d01));
  CHECK_FALSE(w->violated_cone.empty());
  CHECK(w->x.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("raw variants accept wide apertures") {
  MatrixXcd b = MatrixXcd::Identity(2, 2);
  b(0, 0) += Complex(0.0, 1.5);
  b(1, 1) += Complex(0.0, 1.5);
  CHECK(in_symmetric_cone_raw(b, 2.0));
  CHECK(symmetric_cone_margin_raw(b, 2.0) == doctest::Approx(0.5));
  CHECK_FALSE(in_symmetric_cone_raw(b, 1.2));
  CHECK(in_matrix_cone_raw(b, 2.0));
}

TEST_CASE("membership is scale invariant and monotone in the aperture") {
  RandomStream rng(99, 0);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
    const MatrixXd q = rng.normal_matrix(n, n);
    const MatrixXd x = q * q.transpose();
    const MatrixXd y = rng.symmetric_matrix(n);
    const double s = 0.1 * rng.uniform(0.0, 2.0) * operator_norm(x) /
                     std::max(operator_norm(y), 1e-12);
    const MatrixXcd b =
        x.cast<Complex>() + Complex(0, 1) * (s * y).cast<Complex>();
    const ConeParams params(0.1);
    const bool member = in_symmetric_cone(b, params);

    const double c = rng.uniform(0.05, 20.0);
    CHECK(in_symmetric_cone(c * b, params) == member);

    if (member) CHECK(in_symmetric_cone(b, ConeParams(0.5)));
    if (!member) CHECK_FALSE(in_symmetric_cone(b, ConeParams(0.02)));

    // the witness search must agree with the membership predicate
    const auto w = quadratic_form_witness(b, params, 10, rng.next_u64());
    if (member) CHECK_FALSE(w.has_value());
    if (!member) {
      REQUIRE(w.has_value());
      CHECK_FALSE(in_right_cone(w->value, params));
    }
  }
}

TEST_CASE("cone checks reject malformed input") {
  MatrixXcd nonsym(2, 2);
  nonsym << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(1, 0);
  const ConeParams params(0.1);
  CHECK_THROWS_AS(in_symmetric_cone(nonsym, params), InvalidInputError);
  CHECK_THROWS_AS(quadratic_form_witness(nonsym, params, 1, 0),
                  InvalidInputError);
  MatrixXcd nan_mat = MatrixXcd::Identity(2, 2);
  nan_mat(0, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(symmetric_cone_margin(nan_mat, params), InvalidInputError);
}
