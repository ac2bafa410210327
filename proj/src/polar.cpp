#include "holo/polar.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "holo/sqrtm.hpp"

namespace holo {

RealPolarFactors real_polar(const MatrixXd& g) {
  if (g.rows() != g.cols())
    throw InvalidInputError("real_polar: matrix must be square");
  if (!g.allFinite()) throw InvalidInputError("real_polar: non-finite entries");
  Eigen::JacobiSVD<MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double sigma_min = svd.singularValues().tail(1)(0);
  if (sigma_min <= 1e-14 * svd.singularValues()(0) || sigma_min == 0.0)
    throw DomainError("real_polar: matrix is numerically singular");
  if (g.determinant() <= 0.0)
    throw DomainError("real_polar: determinant must be positive");
  const MatrixXd w = svd.matrixU();
  const MatrixXd v = svd.matrixV();
  RealPolarFactors out;
  out.U = w * v.transpose();
  out.P = w * svd.singularValues().asDiagonal() * w.transpose();
  return out;
}

PolarFactors complex_polar(const MatrixXcd& h) {
  require_square(h, "complex_polar");
  require_finite(h, "complex_polar");
  const Eigen::Index n = h.rows();
  const MatrixXcd b = h * h.transpose();
  const MatrixXcd s0 = principal_sqrt(b).S;

  MatrixXcd q = Eigen::PartialPivLU<MatrixXcd>(s0).solve(h);
  // One Newton step on Q Q^T = I.
  const MatrixXcd q_inv_t =
      Eigen::PartialPivLU<MatrixXcd>(q.transpose()).solve(
          MatrixXcd::Identity(n, n));
  q = 0.5 * (q + q_inv_t).eval();

  PolarFactors out;
  out.Q = q;
  const MatrixXcd hqt = h * q.transpose();
  out.S = 0.5 * (hqt + hqt.transpose());
  out.residual_sq = (out.S * out.Q - h).norm() / h.norm();
  out.residual_orth = (q * q.transpose() - MatrixXcd::Identity(n, n)).norm();
  return out;
}

NearestOrthogonal nearest_special_orthogonal(const MatrixXcd& q,
                                             MatrixNorm norm) {
  require_square(q, "nearest_special_orthogonal");
  require_finite(q, "nearest_special_orthogonal");
  const Eigen::Index n = q.rows();
  const double orth = (q * q.transpose() - MatrixXcd::Identity(n, n)).norm();
  if (orth > 1e-8)
    throw InvalidInputError(
        "nearest_special_orthogonal: input is not complex orthogonal, "
        "residual " + std::to_string(orth));

  const MatrixXd q0 = real_part(q);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(q0 * q0.transpose());
  if (es.eigenvalues()(0) <= 1e-12)
    throw DomainError("nearest_special_orthogonal: Re Q is degenerate");
  const VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const MatrixXd s_inv = es.eigenvectors() * inv_sqrt.asDiagonal() *
                         es.eigenvectors().transpose();

  NearestOrthogonal out;
  out.U = s_inv * q0;
  if (out.U.determinant() < 0.0)
    throw DomainError(
        "nearest_special_orthogonal: nearest orthogonal matrix is not special");
  out.dist = matrix_norm(MatrixXcd(q - out.U.cast<Complex>()), norm);
  return out;
}

OrthDistanceStats image_orth_distance(const GroupSpec& spec, double delta,
                                      int trials, std::uint64_t seed,
                                      double radius) {
  if (!(delta > 0.0) || delta > 0.05)
    throw InvalidInputError("image_orth_distance: delta must lie in (0, 0.05]");
  if (trials < 1) throw InvalidInputError("image_orth_distance: trials >= 1");
  OrthDistanceStats stats;
  stats.trials = trials;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const TubeSample ts = sample_tube(spec, delta, radius, rng);
    const PolarFactors pf = complex_polar(ts.h);
    const NearestOrthogonal no = nearest_special_orthogonal(pf.Q);
    stats.max_dist = std::max(stats.max_dist, no.dist);
    sum += no.dist;
  }
  stats.mean_dist = sum / trials;
  stats.c_hat = stats.max_dist / delta;
  return stats;
}

}  // namespace holo
