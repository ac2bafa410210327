#ifndef HOLO_CONES_HPP
#define HOLO_CONES_HPP

#include <optional>
#include <string>

#include "holo/common.hpp"

namespace holo {

/// Aperture and norm convention for the cones N_delta+, V_delta,
/// M_delta and M_delta+.
struct ConeParams {
  double delta = 0.1;
  MatrixNorm norm = MatrixNorm::Operator2;

  ConeParams() = default;
  ConeParams(double d, MatrixNorm nrm = MatrixNorm::Operator2)
      : delta(d), norm(nrm) {
    if (!(delta > 0.0) || !(delta < 1.0))
      throw InvalidInputError("ConeParams: delta must lie in (0, 1), got " +
                              std::to_string(delta));
  }
};

/// Real vector x with <Bx,x> outside the scalar cone.
struct ConeWitness {
  VectorXd x;
  Complex value;
  std::string violated_cone;
};

/// |Im z| < delta * Re z.
bool in_right_cone(Complex z, const ConeParams& params);
/// Signed slack delta*Re z - |Im z|; positive inside the cone.
double right_cone_margin(Complex z, const ConeParams& params);

/// ||Im z|| < delta * ||Re z||.
bool in_vector_cone(const VectorXcd& z, const ConeParams& params);
double vector_cone_margin(const VectorXcd& z, const ConeParams& params);

/// ||Im A|| < delta * ||Re A|| in the configured norm.
bool in_matrix_cone(const MatrixXcd& a, const ConeParams& params);
double matrix_cone_margin(const MatrixXcd& a, const ConeParams& params);

/// Symmetric B with delta*Re B + Im B and delta*Re B - Im B both
/// positive definite. The margin is the smaller of the two smallest
/// eigenvalues.
bool in_symmetric_cone(const MatrixXcd& b, const ConeParams& params);
double symmetric_cone_margin(const MatrixXcd& b, const ConeParams& params);

/// Variants that allow apertures >= 1, used for derived cones such as
/// M_{2n delta}+ whose aperture can leave (0, 1).
bool in_matrix_cone_raw(const MatrixXcd& a, double delta,
                        MatrixNorm norm = MatrixNorm::Operator2);
bool in_symmetric_cone_raw(const MatrixXcd& b, double delta);
double symmetric_cone_margin_raw(const MatrixXcd& b, double delta);

/// Searches for a real x with <Bx,x> outside N_delta+. Deterministic
/// path first: an eigenvector of the most negative eigenvalue of
/// delta*Re B -+ Im B, then seeded random unit vectors.
std::optional<ConeWitness> quadratic_form_witness(const MatrixXcd& b,
                                                  const ConeParams& params,
                                                  int trials,
                                                  std::uint64_t seed);

}  // namespace holo

#endif
