#ifndef HOLO_SQRTM_HPP
#define HOLO_SQRTM_HPP

#include <string>
#include <vector>

#include "holo/common.hpp"
#include "holo/cones.hpp"

namespace holo {

/// Unordered eigenvalues with multiplicity.
struct Spectrum {
  std::vector<Complex> values;
};

struct SqrtReport {
  MatrixXcd S;
  double residual = 0.0;
  MatrixXd U;
  VectorXd Lambda;
  MatrixXd K;
  double max_K_entry = 0.0;
  double re_S_min_eig = 0.0;
  double cone_margin = 0.0;
  double structure_residual = 0.0;
  double input_cone_margin = 0.0;
  std::vector<std::string> violations;
};

constexpr int kMaxEigSize = 16;

/// Eigenvalues of a dense complex matrix, n <= 16.
Spectrum eigenvalues(const MatrixXcd& a);

/// Principal square root for spectra in the open right half-plane.
/// Scaled Denman-Beavers iteration with an eigendecomposition
/// fallback; S is symmetrized per step when B is symmetric.
SqrtReport principal_sqrt(const MatrixXcd& b, double tol = 1e-12);

/// Computes S = principal_sqrt(B), factors S = U (I + iK) Lambda U^T
/// from the eigendecomposition Re S = U Lambda U^T, and checks
/// S in M_{2n delta}+, max |K_ij| <= 2 delta and Re S > 0.
/// Failed checks are listed in .violations, never thrown.
SqrtReport verify_sqrt_structure(const MatrixXcd& b, const ConeParams& params);

}  // namespace holo

#endif
