#include "holo/cones.hpp"

#include <cmath>

#include "holo/rng.hpp"

namespace holo {

namespace {

Complex quad_form(const MatrixXcd& b, const VectorXd& x) {
  const VectorXcd xc = x.cast<Complex>();
  return (xc.transpose() * b * xc)(0, 0);
}

void check_scalar(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidInputError("cone test: non-finite scalar");
}

}  // namespace

bool in_right_cone(Complex z, const ConeParams& params) {
  return right_cone_margin(z, params) > 0.0;
}

double right_cone_margin(Complex z, const ConeParams& params) {
  check_scalar(z);
  return params.delta * z.real() - std::abs(z.imag());
}

bool in_vector_cone(const VectorXcd& z, const ConeParams& params) {
  return vector_cone_margin(z, params) > 0.0;
}

double vector_cone_margin(const VectorXcd& z, const ConeParams& params) {
  if (!z.real().allFinite() || !z.imag().allFinite())
    throw InvalidInputError("in_vector_cone: non-finite entries");
  return params.delta * z.real().norm() - z.imag().norm();
}

bool in_matrix_cone(const MatrixXcd& a, const ConeParams& params) {
  return matrix_cone_margin(a, params) > 0.0;
}

double matrix_cone_margin(const MatrixXcd& a, const ConeParams& params) {
  require_square(a, "in_matrix_cone");
  require_finite(a, "in_matrix_cone");
  return params.delta * matrix_norm(real_part(a), params.norm) -
         matrix_norm(imag_part(a), params.norm);
}

bool in_matrix_cone_raw(const MatrixXcd& a, double delta, MatrixNorm norm) {
  require_square(a, "in_matrix_cone");
  require_finite(a, "in_matrix_cone");
  return matrix_norm(imag_part(a), norm) < delta * matrix_norm(real_part(a), norm);
}

bool in_symmetric_cone(const MatrixXcd& b, const ConeParams& params) {
  return symmetric_cone_margin(b, params) > 0.0;
}

double symmetric_cone_margin(const MatrixXcd& b, const ConeParams& params) {
  return symmetric_cone_margin_raw(b, params.delta);
}

bool in_symmetric_cone_raw(const MatrixXcd& b, double delta) {
  return symmetric_cone_margin_raw(b, delta) > 0.0;
}

double symmetric_cone_margin_raw(const MatrixXcd& b, double delta) {
  require_square(b, "in_symmetric_cone");
  require_finite(b, "in_symmetric_cone");
  if (!is_symmetric(b))
    throw InvalidInputError("in_symmetric_cone: matrix is not symmetric");
  const MatrixXd x = real_part(b);
  const MatrixXd y = imag_part(b);
  const double plus = min_symmetric_eigenvalue(delta * x + y);
  const double minus = min_symmetric_eigenvalue(delta * x - y);
  return std::min(plus, minus);
}

std::optional<ConeWitness> quadratic_form_witness(const MatrixXcd& b,
                                                  const ConeParams& params,
                                                  int trials,
                                                  std::uint64_t seed) {
  require_square(b, "quadratic_form_witness");
  require_finite(b, "quadratic_form_witness");
  if (!is_symmetric(b))
    throw InvalidInputError("quadratic_form_witness: matrix is not symmetric");

  const MatrixXd x = real_part(b);
  const MatrixXd y = imag_part(b);

  // If delta*x -+ y has a negative direction, that eigenvector already
  // pushes <Bx,x> out of the scalar cone.
  for (int sign = -1; sign <= 1; sign += 2) {
    const MatrixXd m = params.delta * x + sign * y;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    if (es.eigenvalues()(0) <= 0.0) {
      const VectorXd v = es.eigenvectors().col(0);
      const Complex value = quad_form(b, v);
      if (!in_right_cone(value, params))
        return ConeWitness{v, value, "N_delta+"};
    }
  }

  RandomStream rng(seed);
  for (int t = 0; t < trials; ++t) {
    const VectorXd v = rng.unit_vector(static_cast<int>(b.rows()));
    const Complex value = quad_form(b, v);
    if (!in_right_cone(value, params)) return ConeWitness{v, value, "N_delta+"};
  }
  return std::nullopt;
}

}  // namespace holo
