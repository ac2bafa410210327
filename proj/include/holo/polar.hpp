#ifndef HOLO_POLAR_HPP
#define HOLO_POLAR_HPP

#include <cstdint>

#include "holo/common.hpp"
#include "holo/liegroups.hpp"

namespace holo {

struct PolarFactors {
  MatrixXcd S;
  MatrixXcd Q;
  double residual_sq = 0.0;
  double residual_orth = 0.0;
};

struct RealPolarFactors {
  MatrixXd P;
  MatrixXd U;
};

/// g = P U with P symmetric positive definite and U special
/// orthogonal; requires det g > 0.
RealPolarFactors real_polar(const MatrixXd& g);

/// h = S Q with S = principal sqrt of h h^T (bilinear transpose) and
/// Q = S^{-1} h complex orthogonal.
PolarFactors complex_polar(const MatrixXcd& h);

struct NearestOrthogonal {
  MatrixXd U;
  double dist = 0.0;
};

/// For Q complex orthogonal near the reals, U = sqrt(Q0 Q0^T)^{-1} Q0
/// with Q0 = Re Q, and dist = ||Q - U|| in the given norm.
NearestOrthogonal nearest_special_orthogonal(
    const MatrixXcd& q, MatrixNorm norm = MatrixNorm::Operator2);

struct OrthDistanceStats {
  double max_dist = 0.0;
  double mean_dist = 0.0;
  double c_hat = 0.0;
  int trials = 0;
};

/// Samples h in E_delta, measures ||psi(h) - U|| over the trials and
/// reports the empirical constant C_hat = max_dist / delta.
OrthDistanceStats image_orth_distance(const GroupSpec& spec, double delta,
                                      int trials, std::uint64_t seed,
                                      double radius = 0.5);

}  // namespace holo

#endif
