#include "holo/covering.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>
#include <sstream>

#include "holo/polar.hpp"

namespace holo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_unit_sample(const VectorXcd& z) {
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double m = std::abs(z(j));
    if (!std::isfinite(m) || std::abs(m - 1.0) > 1e-6)
      throw InvalidInputError("circle path: sample entry is not unit modulus");
  }
}

MatrixXd rotation(double theta) {
  MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

void check_sl2(const MatrixXd& g, const char* what) {
  if (g.rows() != 2 || g.cols() != 2)
    throw InvalidInputError(std::string(what) + ": expected a 2x2 matrix");
  if (!g.allFinite())
    throw InvalidInputError(std::string(what) + ": non-finite entries");
  if (std::abs(g.determinant() - 1.0) > 1e-6)
    throw InvalidInputError(std::string(what) + ": determinant must be 1");
}

void check_cover_element(const CoverElement& e, double tol, const char* what) {
  check_sl2(e.g, what);
  if (!std::isfinite(e.x))
    throw InvalidInputError(std::string(what) + ": non-finite lift");
  const double mismatch = wrap_angle(e.x - psi_angle(e.g));
  if (std::abs(mismatch) > tol) {
    std::ostringstream os;
    os << what << ": lift is not compatible with psi(g), phase mismatch "
       << mismatch;
    throw InvalidInputError(os.str());
  }
}

}  // namespace

VectorXcd torus_point(const VectorXd& x) {
  VectorXcd z(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j)
    z(j) = Complex(std::cos(x(j)), std::sin(x(j)));
  return z;
}

double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  if (t > kPi) t -= 2.0 * kPi;
  return t;
}

std::vector<VectorXd> lift_path(const CirclePath& path, const VectorXd& start) {
  if (path.samples.empty())
    throw InvalidInputError("lift_path: path has no samples");
  const Eigen::Index n = start.size();
  for (const VectorXcd& z : path.samples) {
    if (z.size() != n)
      throw InvalidInputError("lift_path: sample dimension mismatch");
    check_unit_sample(z);
  }
  const VectorXcd head = torus_point(start);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(head(j) - path.samples[0](j) / std::abs(path.samples[0](j))) >
        1e-9)
      throw InvalidInputError("lift_path: start does not project to samples[0]");
  }

  std::vector<VectorXd> lifts(path.samples.size());
  lifts[0] = start;
  for (std::size_t k = 1; k < path.samples.size(); ++k) {
    lifts[k] = VectorXd(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double step =
          std::arg(path.samples[k](j) * std::conj(path.samples[k - 1](j)));
      if (std::abs(step) >= kPi / 2.0)
        throw NumericError(
            "lift_path: angular step >= pi/2, refine the sampling");
      lifts[k](j) = lifts[k - 1](j) + step;
    }
  }
  return lifts;
}

double psi_angle(const MatrixXd& g) {
  if (g.rows() != 2 || g.cols() != 2)
    throw InvalidInputError("psi_angle: expected a 2x2 matrix");
  if (!g.allFinite()) throw InvalidInputError("psi_angle: non-finite entries");
  if (g.determinant() <= 0.0)
    throw DomainError("psi_angle: determinant must be positive");
  return std::atan2(g(1, 0) - g(0, 1), g(0, 0) + g(1, 1));
}

int winding_number(const std::vector<MatrixXd>& loop, bool closed) {
  if (!closed)
    throw InvalidInputError("winding_number: loop must be closed");
  if (loop.size() < 2)
    throw InvalidInputError("winding_number: need at least two samples");
  for (const MatrixXd& g : loop) check_sl2(g, "winding_number");

  double total = 0.0;
  double prev = psi_angle(loop.front());
  for (std::size_t k = 1; k <= loop.size(); ++k) {
    const double cur =
        psi_angle(k < loop.size() ? loop[k] : loop.front());
    const double step = wrap_angle(cur - prev);
    if (std::abs(step) >= kPi / 2.0)
      throw NumericError(
          "winding_number: angular step >= pi/2, refine the sampling");
    total += step;
    prev = cur;
  }
  const double k_real = total / (2.0 * kPi);
  const long k = std::lround(k_real);
  if (std::abs(k_real - static_cast<double>(k)) > 1e-6)
    throw NumericError("winding_number: lifted angle change is not a multiple "
                       "of 2 pi; the loop does not close");
  return static_cast<int>(k);
}

CoverElement cover_identity() { return CoverElement{MatrixXd::Identity(2, 2), 0.0}; }

CoverElement make_cover_element(const MatrixXd& g, double x, double tol) {
  CoverElement e{g, x};
  check_cover_element(e, tol, "make_cover_element");
  return e;
}

double canonical_lift(const MatrixXd& g) {
  check_sl2(g, "canonical_lift");
  const RealPolarFactors rp = real_polar(g);
  return std::atan2(rp.U(1, 0), rp.U(0, 0));
}

CoverElement cover_multiply(const CoverElement& a, const CoverElement& b) {
  check_cover_element(a, 1e-6, "cover_multiply: left factor");
  check_cover_element(b, 1e-6, "cover_multiply: right factor");

  const double theta_b = canonical_lift(b.g);
  const double deck = (b.x - theta_b) / (2.0 * kPi);
  const long k_b = std::lround(deck);
  if (std::abs(deck - static_cast<double>(k_b)) > 1e-6 / (2.0 * kPi))
    throw InvalidInputError(
        "cover_multiply: right factor lift is inconsistent with its "
        "canonical-path lift");

  // gamma_b(t) = exp(t log P) R(t theta_b) with (P, R) the polar
  // factors of b.g; psi(gamma_b(t)) = R(t theta_b) exactly.
  const RealPolarFactors rp = real_polar(b.g);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(rp.P);
  const VectorXd log_lam = es.eigenvalues().array().log();
  const MatrixXd evec = es.eigenvectors();
  const auto gamma = [&](double t) -> MatrixXd {
    const VectorXd pow_lam = (t * log_lam.array()).exp();
    return evec * pow_lam.asDiagonal() * evec.transpose() * rotation(t * theta_b);
  };

  const auto lifted_change = [&](int steps) -> std::optional<double> {
    double change = 0.0;
    double prev = psi_angle(a.g);
    for (int j = 1; j <= steps; ++j) {
      const double t = static_cast<double>(j) / steps;
      const double cur = psi_angle(a.g * gamma(t));
      const double step = wrap_angle(cur - prev);
      if (std::abs(step) >= kPi / 2.0) return std::nullopt;
      change += step;
      prev = cur;
    }
    return change;
  };

  std::optional<double> prev_change;
  for (int steps = 256; steps <= (1 << 22); steps *= 2) {
    const std::optional<double> change = lifted_change(steps);
    if (!change) {
      prev_change.reset();
      continue;
    }
    if (prev_change && std::abs(*change - *prev_change) <= 1e-9) {
      CoverElement out;
      out.g = a.g * b.g;
      out.x = a.x + *change + 2.0 * kPi * static_cast<double>(k_b);
      return out;
    }
    prev_change = change;
  }
  throw NumericError("cover_multiply: path lift did not stabilize");
}

bool pullback_member(const VectorXcd& z_image, const VectorXd& w, double tol) {
  if (z_image.size() != w.size())
    throw InvalidInputError("pullback_member: dimension mismatch");
  if (!(tol >= 0.0)) throw InvalidInputError("pullback_member: bad tolerance");
  const VectorXcd chi = torus_point(w);
  for (Eigen::Index j = 0; j < w.size(); ++j)
    if (std::abs(chi(j) - z_image(j)) > tol) return false;
  return true;
}

}  // namespace holo
