#ifndef HOLO_COVERING_HPP
#define HOLO_COVERING_HPP

#include <vector>

#include "holo/common.hpp"

namespace holo {

/// Sampled path on the n-torus, one unit-modulus complex entry per
/// coordinate; consecutive samples must stay within angular distance
/// pi/2 per coordinate.
struct CirclePath {
  std::vector<VectorXcd> samples;
  bool closed = false;
};

/// chi^n(x) = (e^{i x_1}, ..., e^{i x_n}).
VectorXcd torus_point(const VectorXd& x);

/// Principal angle in (-pi, pi].
double wrap_angle(double t);

/// Continuous lift of the path through chi^n starting at start.
std::vector<VectorXd> lift_path(const CirclePath& path, const VectorXd& start);

/// Angle of the orthogonal polar factor of a 2x2 matrix with positive
/// determinant: atan2(g21 - g12, g11 + g22).
double psi_angle(const MatrixXd& g);

/// Lifted change of the psi-angle around a closed loop, divided by
/// 2 pi.
int winding_number(const std::vector<MatrixXd>& loop, bool closed = true);

/// Element of the universal cover of SL(2,R): a group element with a
/// real lift x of the psi-angle, e^{ix} = phase(psi(g)).
struct CoverElement {
  MatrixXd g;
  double x = 0.0;
};

CoverElement cover_identity();

/// Validates the chi-compatibility invariant before use.
CoverElement make_cover_element(const MatrixXd& g, double x, double tol = 1e-6);

/// Lift of the psi-angle along the canonical polar-interpolation path
/// from I to g, a value in (-pi, pi].
double canonical_lift(const MatrixXd& g);

/// Lifted group law: result.g = a.g b.g and result.x continues a.x
/// along t -> psi(a.g gamma_b(t)).
CoverElement cover_multiply(const CoverElement& a, const CoverElement& b);

/// True iff chi^n(w) matches z_image within tol coordinatewise.
bool pullback_member(const VectorXcd& z_image, const VectorXd& w, double tol);

}  // namespace holo

#endif
