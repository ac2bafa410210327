#include <doctest.h>

#include <cmath>

#include "holo/polar.hpp"
#include "holo/rng.hpp"

using namespace holo;

namespace {

MatrixXd rot(double theta) {
  MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace

TEST_CASE("real polar of a rotation is (I, R)") {
  const MatrixXd g = rot(0.3);
  const RealPolarFactors f = real_polar(g);
  CHECK((f.P - MatrixXd::Identity(2, 2)).norm() < 1e-14);
  CHECK((f.U - g).norm() < 1e-14);
}

TEST_CASE("real polar of diag(2,3) times a rotation") {
  MatrixXd p(2, 2);
  p << 2, 0, 0, 3;
  const MatrixXd g = p * rot(0.3);
  const RealPolarFactors f = real_polar(g);
  CHECK((f.P - p).norm() < 1e-12);
  CHECK((f.U - rot(0.3)).norm() < 1e-12);
  CHECK((f.P * f.U - g).norm() < 1e-12);
  CHECK(std::abs(f.U.determinant() - 1.0) < 1e-12);
}

TEST_CASE("real polar rejects singular and reflected input") {
  MatrixXd sing = MatrixXd::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(real_polar(sing), DomainError);
  MatrixXd refl(2, 2);
  refl << 0, 1, 1, 0;
  CHECK_THROWS_AS(real_polar(refl), DomainError);
}

TEST_CASE("complex polar of a real matrix reduces to the real factors") {
  RandomStream rng(5, 0);
  const GroupSpec spec = parse_group("gl+:3");
  const MatrixXd g = sample_group(spec, 0.8, rng);
  const PolarFactors pf = complex_polar(g.cast<Complex>());
  const RealPolarFactors rf = real_polar(g);
  CHECK((pf.Q - rf.U.cast<Complex>()).norm() < 1e-10);
  CHECK((pf.S - rf.P.cast<Complex>()).norm() < 1e-10);
  CHECK(imag_part(pf.Q).norm() == 0.0);
}

TEST_CASE("complex polar of a complex rotation has Q = I") {
  // h = [[cosh t, -i sinh t], [i sinh t, cosh t]] satisfies h h^T = I
  // in the bilinear sense, so S = I and Q = h.
  const double t = 0.05;
  MatrixXcd h(2, 2);
  h << Complex(std::cosh(t), 0), Complex(0, -std::sinh(t)),
      Complex(0, std::sinh(t)), Complex(std::cosh(t), 0);
  const PolarFactors pf = complex_polar(h);
  CHECK((pf.S - MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  CHECK((pf.Q - h).norm() < 1e-12);

  const double q0 = operator_norm(real_part(pf.Q));
  const double q1 = operator_norm(imag_part(pf.Q));
  CHECK(std::abs(q0 * q0 - q1 * q1 - 1.0) < 1e-12);
}

TEST_CASE("complex polar reconstructs tube samples") {
  const GroupSpec spec = parse_group("sl:3");
  for (std::uint64_t seed : {10, 11, 12}) {
    const TubeSample ts = sample_tube(spec, 0.04, 0.6, seed);
    const PolarFactors pf = complex_polar(ts.h);
    CHECK(pf.residual_sq <= 1e-11);
    CHECK(pf.residual_orth <= 1e-11);
    CHECK((pf.S * pf.Q - ts.h).norm() / ts.h.norm() < 1e-11);
    // Q Q^T = I in the bilinear sense
    CHECK((pf.Q * pf.Q.transpose() - MatrixXcd::Identity(3, 3)).norm() < 1e-10);
  }
}

TEST_CASE("nearest special orthogonal matrix") {
  const MatrixXd u = rot(0.4);
  MatrixXcd q = u.cast<Complex>();
  const NearestOrthogonal exact = nearest_special_orthogonal(q);
  CHECK((exact.U - u).norm() < 1e-12);
  CHECK(exact.dist < 1e-12);

  // small complex orthogonal perturbation moves Q off the reals
  const double t = 0.02;
  MatrixXcd boost(2, 2);
  boost << Complex(std::cosh(t), 0), Complex(0, -std::sinh(t)),
      Complex(0, std::sinh(t)), Complex(std::cosh(t), 0);
  q = boost * u.cast<Complex>();
  const NearestOrthogonal near = nearest_special_orthogonal(q);
  CHECK(near.dist > 0.0);
  CHECK(near.dist < 3.0 * t);
  CHECK((near.U * near.U.transpose() - MatrixXd::Identity(2, 2)).norm() <
        1e-12);
  CHECK(std::abs(near.U.determinant() - 1.0) < 1e-12);

  CHECK_THROWS_AS(nearest_special_orthogonal(2.0 * u.cast<Complex>()),
                  InvalidInputError);
}

TEST_CASE("image orth distance scales like delta") {
  const GroupSpec spec = parse_group("gl+:3");
  const OrthDistanceStats a = image_orth_distance(spec, 0.02, 60, 7, 0.5);
  const OrthDistanceStats b = image_orth_distance(spec, 0.04, 60, 7, 0.5);
  CHECK(a.trials == 60);
  CHECK(a.max_dist > 0.0);
  CHECK(a.c_hat > 0.0);
  // the empirical constant is stable within a factor two across deltas
  CHECK(std::max(a.c_hat, b.c_hat) / std::min(a.c_hat, b.c_hat) < 2.0);
  CHECK_THROWS_AS(image_orth_distance(spec, 0.2, 10, 7, 0.5),
                  InvalidInputError);
}
