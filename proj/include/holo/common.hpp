#ifndef HOLO_COMMON_HPP
#define HOLO_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace holo {

using Complex = std::complex<double>;
using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or non-finite input (wrong shape, NaN entries, bad config).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of the operation
/// (e.g. spectrum touching the closed left half-plane, det <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iteration failed to converge, integer overflow, or a sampled path
/// is too coarse to lift.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Matrix dimension beyond the supported desk scale.
class UnsupportedSizeError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

enum class MatrixNorm { Operator2, Frobenius };

/// Largest singular value.
double operator_norm(const MatrixXd& a);
double operator_norm(const MatrixXcd& a);

double matrix_norm(const MatrixXd& a, MatrixNorm norm);
double matrix_norm(const MatrixXcd& a, MatrixNorm norm);

bool all_finite(const MatrixXcd& a);
bool all_finite(const MatrixXd& a);

/// ||A - A^T|| <= tol * ||A||, with the zero matrix counting as symmetric.
bool is_symmetric(const MatrixXcd& a, double tol = 1e-12);

void require_square(const MatrixXcd& a, const char* what);
void require_finite(const MatrixXcd& a, const char* what);

inline MatrixXd real_part(const MatrixXcd& a) { return a.real(); }
inline MatrixXd imag_part(const MatrixXcd& a) { return a.imag(); }

/// Smallest eigenvalue of a real symmetric matrix.
double min_symmetric_eigenvalue(const MatrixXd& a);

}  // namespace holo

#endif
