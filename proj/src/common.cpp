#include "holo/common.hpp"

#include <Eigen/SVD>

namespace holo {

double operator_norm(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(a);
  return svd.singularValues()(0);
}

double operator_norm(const MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

double matrix_norm(const MatrixXd& a, MatrixNorm norm) {
  return norm == MatrixNorm::Operator2 ? operator_norm(a) : a.norm();
}

double matrix_norm(const MatrixXcd& a, MatrixNorm norm) {
  return norm == MatrixNorm::Operator2 ? operator_norm(a) : a.norm();
}

bool all_finite(const MatrixXcd& a) {
  return a.real().allFinite() && a.imag().allFinite();
}

bool all_finite(const MatrixXd& a) { return a.allFinite(); }

bool is_symmetric(const MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.norm();
  return (a - a.transpose()).norm() <= tol * (scale > 0 ? scale : 1.0);
}

void require_square(const MatrixXcd& a, const char* what) {
  if (a.rows() != a.cols())
    throw InvalidInputError(std::string(what) + ": matrix must be square, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_finite(const MatrixXcd& a, const char* what) {
  if (!all_finite(a))
    throw InvalidInputError(std::string(what) + ": non-finite entries");
}

double min_symmetric_eigenvalue(const MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace holo
