#include "holo/sqrtm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace holo {

namespace {

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

MatrixXcd eig_fallback_sqrt(const MatrixXcd& b) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(b);
  if (es.info() != Eigen::Success)
    throw NumericError("principal_sqrt: eigensolver failed");
  VectorXcd roots = es.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) roots(i) = std::sqrt(roots(i));
  const MatrixXcd v = es.eigenvectors();
  return v * roots.asDiagonal() * v.inverse();
}

}  // namespace

Spectrum eigenvalues(const MatrixXcd& a) {
  require_square(a, "eigenvalues");
  require_finite(a, "eigenvalues");
  if (a.rows() > kMaxEigSize)
    throw UnsupportedSizeError("eigenvalues: size " + std::to_string(a.rows()) +
                               " exceeds supported maximum " +
                               std::to_string(kMaxEigSize));
  Spectrum spec;
  if (a.rows() == 0) return spec;
  Eigen::ComplexEigenSolver<MatrixXcd> es(a, false);
  if (es.info() != Eigen::Success)
    throw NumericError("eigenvalues: iteration did not converge");
  const VectorXcd& ev = es.eigenvalues();
  spec.values.assign(ev.data(), ev.data() + ev.size());
  return spec;
}

SqrtReport principal_sqrt(const MatrixXcd& b, double tol) {
  require_square(b, "principal_sqrt");
  require_finite(b, "principal_sqrt");
  if (!(tol > 0)) throw InvalidInputError("principal_sqrt: tol must be positive");
  const Eigen::Index n = b.rows();
  SqrtReport report;
  if (n == 0) {
    report.S = b;
    return report;
  }

  for (const Complex& lambda : eigenvalues(b).values) {
    if (lambda.real() <= 0.0)
      throw DomainError(
          "principal_sqrt: eigenvalue " + format_complex(lambda) +
          " lies outside the open right half-plane");
  }

  const bool symmetric = is_symmetric(b);
  const double b_norm = b.norm();
  const MatrixXcd id = MatrixXcd::Identity(n, n);

  // Scaled Denman-Beavers: Y -> sqrt(B), Z -> inv(sqrt(B)).
  MatrixXcd y = b;
  MatrixXcd z = id;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool scale = true;
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::PartialPivLU<MatrixXcd> lu_y(y);
    Eigen::PartialPivLU<MatrixXcd> lu_z(z);
    double mu = 1.0;
    if (scale) {
      const double dets = std::abs(lu_y.determinant() * lu_z.determinant());
      if (dets > 0 && std::isfinite(dets))
        mu = std::pow(dets, -1.0 / (2.0 * static_cast<double>(n)));
    }
    const MatrixXcd y_next =
        0.5 * (mu * y + lu_z.solve(id) / mu);
    const MatrixXcd z_next =
        0.5 * (mu * z + lu_y.solve(id) / mu);
    const double change = (y_next - y).norm() / std::max(y_next.norm(), 1e-300);
    y = y_next;
    z = z_next;
    if (symmetric) {
      y = 0.5 * (y + y.transpose()).eval();
      z = 0.5 * (z + z.transpose()).eval();
    }
    if (change < 1e-2) scale = false;
    residual = (y * y - b).norm() / b_norm;
    if (residual <= tol) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    MatrixXcd s = eig_fallback_sqrt(b);
    if (symmetric) s = 0.5 * (s + s.transpose()).eval();
    const double fb_residual = (s * s - b).norm() / b_norm;
    if (fb_residual < residual) {
      y = s;
      residual = fb_residual;
    }
    if (residual > tol) {
      std::ostringstream os;
      os << "principal_sqrt: no convergence after 100 iterations, residual "
         << residual;
      throw NumericError(os.str());
    }
  }

  report.S = y;
  report.residual = residual;
  return report;
}

SqrtReport verify_sqrt_structure(const MatrixXcd& b, const ConeParams& params) {
  require_square(b, "verify_sqrt_structure");
  require_finite(b, "verify_sqrt_structure");
  if (!is_symmetric(b))
    throw InvalidInputError("verify_sqrt_structure: matrix is not symmetric");

  SqrtReport report = principal_sqrt(b);
  report.input_cone_margin = symmetric_cone_margin(b, params);

  const Eigen::Index n = b.rows();
  const double delta = params.delta;
  const MatrixXcd& s = report.S;

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(real_part(s));
  report.U = es.eigenvectors();
  report.Lambda = es.eigenvalues();
  if (report.U.determinant() < 0) report.U.col(0) *= -1.0;
  report.re_S_min_eig = report.Lambda.minCoeff();

  if (report.re_S_min_eig > 0.0) {
    const MatrixXcd conj = report.U.transpose().cast<Complex>() * s *
                           report.U.cast<Complex>();
    report.K = imag_part(conj) * report.Lambda.asDiagonal().inverse();
    report.max_K_entry = report.K.cwiseAbs().maxCoeff();
    const MatrixXcd rebuilt =
        report.U.cast<Complex>() *
        (MatrixXcd::Identity(n, n) + Complex(0, 1) * report.K.cast<Complex>()) *
        report.Lambda.cast<Complex>().asDiagonal() *
        report.U.transpose().cast<Complex>();
    report.structure_residual = (rebuilt - s).norm() / s.norm();
  } else {
    report.K = MatrixXd::Zero(n, n);
    report.violations.push_back("Re S is not positive definite");
  }

  const double eps_cone = 2.0 * static_cast<double>(n) * delta;
  report.cone_margin = symmetric_cone_margin_raw(s, eps_cone);
  if (!(report.cone_margin > 0.0))
    report.violations.push_back("S is outside M_{2n delta}+");
  if (report.re_S_min_eig > 0.0 && report.max_K_entry > 2.0 * delta)
    report.violations.push_back("max |K_ij| exceeds 2 delta");
  return report;
}

}  // namespace holo
