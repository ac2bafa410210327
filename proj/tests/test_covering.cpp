#include <doctest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "holo/covering.hpp"
#include "holo/rng.hpp"

using namespace holo;

namespace {

constexpr double kPi = std::numbers::pi;

MatrixXd rot(double theta) {
  MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

CirclePath circle(double total, int samples, bool closed) {
  CirclePath path;
  path.closed = closed;
  for (int j = 0; j < samples; ++j) {
    VectorXd x(1);
    x(0) = total * j / (samples - 1);
    path.samples.push_back(torus_point(x));
  }
  return path;
}

}  // namespace

TEST_CASE("wrap angle lands in (-pi, pi]") {
  CHECK(wrap_angle(0.3) == doctest::Approx(0.3));
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(2.0 * kPi + 0.1) == doctest::Approx(0.1));
  CHECK(wrap_angle(-0.1 - 4.0 * kPi) == doctest::Approx(-0.1));
}

TEST_CASE("path lifting through the torus covering") {
  const auto lift = lift_path(circle(2.0 * kPi, 101, true), VectorXd::Zero(1));
  CHECK(lift.size() == 101);
  CHECK(lift.back()(0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));

  const auto twice =
      lift_path(circle(4.0 * kPi, 201, true), VectorXd::Zero(1));
  CHECK(twice.back()(0) == doctest::Approx(4.0 * kPi).epsilon(1e-12));

  // lifting is shift-equivariant in the start point
  VectorXd start(1);
  start(0) = 2.0 * kPi;
  const auto shifted = lift_path(circle(2.0 * kPi, 101, true), start);
  CHECK(shifted.back()(0) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("multi coordinate paths lift coordinatewise") {
  CirclePath path;
  const int samples = 80;
  for (int j = 0; j < samples; ++j) {
    VectorXd x(2);
    x(0) = 2.0 * kPi * j / (samples - 1);
    x(1) = -1.0 * j / (samples - 1);
    path.samples.push_back(torus_point(x));
  }
  const auto lift = lift_path(path, VectorXd::Zero(2));
  CHECK(lift.back()(0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(lift.back()(1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("path lifting rejects bad input") {
  CHECK_THROWS_AS(lift_path(CirclePath{}, VectorXd::Zero(1)),
                  InvalidInputError);

  // start must project onto the first sample
  VectorXd off(1);
  off(0) = 0.5;
  CHECK_THROWS_AS(lift_path(circle(2.0 * kPi, 101, true), off),
                  InvalidInputError);

  // a 3-sample full loop steps by 2pi/2 > pi/2
  CHECK_THROWS_AS(lift_path(circle(2.0 * kPi, 3, true), VectorXd::Zero(1)),
                  NumericError);

  CirclePath bad;
  VectorXcd z(1);
  z(0) = Complex(2.0, 0.0);
  bad.samples.push_back(z);
  CHECK_THROWS_AS(lift_path(bad, VectorXd::Zero(1)), InvalidInputError);
}

TEST_CASE("psi angle of a polar product is the rotation angle") {
  CHECK(psi_angle(rot(0.7)) == doctest::Approx(0.7));
  MatrixXd p(2, 2);
  p << 3.0, 1.0, 1.0, 2.0;
  CHECK(psi_angle(p * rot(-1.2)) == doctest::Approx(-1.2));
  CHECK(psi_angle(MatrixXd::Identity(2, 2)) == doctest::Approx(0.0));
  MatrixXd refl(2, 2);
  refl << 0, 1, 1, 0;
  CHECK_THROWS_AS(psi_angle(refl), DomainError);
}

TEST_CASE("winding numbers of rotation loops") {
  for (int k = -2; k <= 2; ++k) {
    std::vector<MatrixXd> loop;
    const int samples = 64 * std::max(1, std::abs(k));
    for (int j = 0; j < samples; ++j)
      loop.push_back(rot(2.0 * kPi * k * j / samples));
    CHECK(winding_number(loop) == k);
  }

  std::vector<MatrixXd> open_arc = {rot(0.0), rot(0.5), rot(1.0)};
  CHECK_THROWS_AS(winding_number(open_arc, false), InvalidInputError);
  std::vector<MatrixXd> scaled = {2.0 * rot(0.0), 2.0 * rot(0.5)};
  CHECK_THROWS_AS(winding_number(scaled), InvalidInputError);
}

TEST_CASE("winding number is a conjugation invariant") {
  MatrixXd a(2, 2);
  a << 2.0, 0.3, 0.0, 0.5;
  const MatrixXd a_inv = a.inverse();
  for (const int samples : {200, 2000}) {
    std::vector<MatrixXd> loop;
    for (int j = 0; j < samples; ++j)
      loop.push_back(a * rot(2.0 * kPi * j / samples) * a_inv);
    CHECK(winding_number(loop) == 1);
  }
}

TEST_CASE("canonical lift of simple elements") {
  CHECK(canonical_lift(MatrixXd::Identity(2, 2)) == doctest::Approx(0.0));
  CHECK(canonical_lift(rot(0.9)) == doctest::Approx(0.9));
  CHECK(canonical_lift(rot(-2.5)) == doctest::Approx(-2.5));
  MatrixXd p(2, 2);
  p << 2.0, 0.0, 0.0, 0.5;
  CHECK(canonical_lift(p) == doctest::Approx(0.0));
  CHECK(canonical_lift(p * rot(1.1)) == doctest::Approx(1.1));
}

TEST_CASE("cover elements validate the angle compatibility") {
  CHECK_NOTHROW(make_cover_element(rot(0.4), 0.4));
  CHECK_NOTHROW(make_cover_element(rot(0.4), 0.4 + 2.0 * kPi));
  CHECK_THROWS_AS(make_cover_element(rot(0.4), 0.9), InvalidInputError);
  const CoverElement e = cover_identity();
  CHECK(e.x == 0.0);
  CHECK((e.g - MatrixXd::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("cover multiplication extends the rotation group law") {
  const CoverElement a = make_cover_element(rot(0.5), 0.5);
  const CoverElement b = make_cover_element(rot(0.7), 0.7);
  const CoverElement ab = cover_multiply(a, b);
  CHECK(ab.x == doctest::Approx(1.2).epsilon(1e-10));
  CHECK((ab.g - rot(1.2)).norm() < 1e-12);

  // the center: a full turn squared from the half turn
  const CoverElement half = make_cover_element(rot(kPi), kPi);
  const CoverElement full = cover_multiply(half, half);
  CHECK(full.x == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK((full.g - MatrixXd::Identity(2, 2)).norm() < 1e-12);

  // deck transformations are central
  CoverElement a_up = a;
  a_up.x += 2.0 * kPi;
  CoverElement b_up = b;
  b_up.x += 2.0 * kPi;
  CHECK(cover_multiply(a_up, b).x ==
        doctest::Approx(ab.x + 2.0 * kPi).epsilon(1e-10));
  CHECK(cover_multiply(a, b_up).x ==
        doctest::Approx(ab.x + 2.0 * kPi).epsilon(1e-10));

  // identity laws
  const CoverElement e = cover_identity();
  CHECK(cover_multiply(e, a).x == doctest::Approx(a.x).epsilon(1e-10));
  CHECK(cover_multiply(a, e).x == doctest::Approx(a.x).epsilon(1e-10));
}

TEST_CASE("cover multiplication is associative on random elements") {
  RandomStream rng(606, 0);
  for (int t = 0; t < 25; ++t) {
    const auto sample = [&rng] {
      MatrixXd sym(2, 2);
      const double u = 0.7 * rng.normal();
      const double v = 0.7 * rng.normal();
      sym << u, v, v, -u;
      const MatrixXd g = MatrixXd(sym.exp()) * rot(rng.uniform(-kPi, kPi));
      return make_cover_element(
          g, canonical_lift(g) + 2.0 * kPi * rng.uniform_int(-2, 2));
    };
    const CoverElement a = sample();
    const CoverElement b = sample();
    const CoverElement c = sample();
    const CoverElement lhs = cover_multiply(cover_multiply(a, b), c);
    const CoverElement rhs = cover_multiply(a, cover_multiply(b, c));
    CHECK(std::abs(lhs.x - rhs.x) < 1e-9);
    CHECK((lhs.g - rhs.g).norm() < 1e-10);
  }
}

TEST_CASE("pullback membership separates fibers") {
  VectorXcd one(1);
  one(0) = Complex(1, 0);
  VectorXd w(1);
  w(0) = 0.0;
  CHECK(pullback_member(one, w, 1e-9));
  w(0) = -2.0 * kPi;
  CHECK(pullback_member(one, w, 1e-9));
  w(0) = kPi;
  CHECK_FALSE(pullback_member(one, w, 1e-9));

  VectorXcd z(2);
  z << Complex(0, 1), Complex(1, 0);
  VectorXd v(2);
  v << kPi / 2.0, 2.0 * kPi;
  CHECK(pullback_member(z, v, 1e-9));
  CHECK_THROWS_AS(pullback_member(z, w, 1e-9), InvalidInputError);
}
