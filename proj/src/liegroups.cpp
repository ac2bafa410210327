#include "holo/liegroups.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "holo/polar.hpp"

namespace holo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MatrixXd unit(int n, int i, int j) {
  MatrixXd e = MatrixXd::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

std::vector<MatrixXd> gl_basis(int n) {
  std::vector<MatrixXd> basis;
  basis.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(unit(n, i, j));
  return basis;
}

std::vector<MatrixXd> sl_basis(int n) {
  std::vector<MatrixXd> basis;
  basis.reserve(n * n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) basis.push_back(unit(n, i, j));
  for (int i = 0; i + 1 < n; ++i)
    basis.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  return basis;
}

std::vector<MatrixXd> antisym_basis(int n) {
  std::vector<MatrixXd> basis;
  basis.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      basis.push_back(unit(n, i, j) - unit(n, j, i));
  return basis;
}

std::vector<MatrixXd> sym_basis(int n) {
  std::vector<MatrixXd> basis;
  basis.reserve(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    basis.push_back(unit(n, i, i));
    for (int j = i + 1; j < n; ++j)
      basis.push_back(unit(n, i, j) + unit(n, j, i));
  }
  return basis;
}

int parse_positive_int(const std::string& s, const std::string& ctx) {
  if (s.empty() || s.size() > 4 ||
      s.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidInputError("parse_group: bad size in '" + ctx + "'");
  const long v = std::stol(s);
  if (v < 1)
    throw InvalidInputError("parse_group: size out of range in '" + ctx + "'");
  if (v > kMaxGroupSize)
    throw UnsupportedSizeError("parse_group: size " + std::to_string(v) +
                               " exceeds supported maximum " +
                               std::to_string(kMaxGroupSize) + " in '" + ctx +
                               "'");
  return static_cast<int>(v);
}

}  // namespace

GroupSpec make_group(GroupFamily family, int n, int p, int q) {
  if (n < 1 || n > kMaxGroupSize)
    throw UnsupportedSizeError("make_group: n must lie in [1, " +
                               std::to_string(kMaxGroupSize) + "]");
  GroupSpec spec;
  spec.family = family;
  spec.n = n;
  std::ostringstream name;
  switch (family) {
    case GroupFamily::GLplus:
      spec.algebra_basis = gl_basis(n);
      name << "gl+:" << n;
      break;
    case GroupFamily::SL:
      spec.algebra_basis = sl_basis(n);
      name << "sl:" << n;
      break;
    case GroupFamily::SO_n:
      spec.algebra_basis = antisym_basis(n);
      name << "so:" << n;
      break;
    case GroupFamily::SO_pq: {
      if (p < 1 || q < 1 || p + q != n)
        throw InvalidInputError("make_group: SO(p,q) needs p, q >= 1 with p+q=n");
      spec.p = p;
      spec.q = q;
      VectorXd diag(n);
      diag.head(p).setOnes();
      diag.tail(q).setConstant(-1.0);
      spec.J = diag.asDiagonal();
      spec.algebra_basis = antisym_basis(n);
      for (MatrixXd& x : spec.algebra_basis) x = (spec.J * x).eval();
      name << "so:" << p << "," << q;
      break;
    }
    case GroupFamily::Sp: {
      if (n % 2 != 0)
        throw InvalidInputError("make_group: Sp needs even matrix size");
      const int m = n / 2;
      spec.J = MatrixXd::Zero(n, n);
      spec.J.topRightCorner(m, m) = MatrixXd::Identity(m, m);
      spec.J.bottomLeftCorner(m, m) = -MatrixXd::Identity(m, m);
      spec.algebra_basis = sym_basis(n);
      for (MatrixXd& x : spec.algebra_basis) x = (spec.J * x).eval();
      name << "sp:" << n;
      break;
    }
  }
  spec.name = name.str();
  return spec;
}

GroupSpec parse_group(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos)
    throw InvalidInputError("parse_group: expected '<family>:<size>', got '" +
                            name + "'");
  const std::string family = name.substr(0, colon);
  const std::string size = name.substr(colon + 1);
  if (family == "gl+")
    return make_group(GroupFamily::GLplus, parse_positive_int(size, name));
  if (family == "sl")
    return make_group(GroupFamily::SL, parse_positive_int(size, name));
  if (family == "sp")
    return make_group(GroupFamily::Sp, parse_positive_int(size, name));
  if (family == "so") {
    const auto comma = size.find(',');
    if (comma == std::string::npos)
      return make_group(GroupFamily::SO_n, parse_positive_int(size, name));
    const int p = parse_positive_int(size.substr(0, comma), name);
    const int q = parse_positive_int(size.substr(comma + 1), name);
    return make_group(GroupFamily::SO_pq, p + q, p, q);
  }
  throw InvalidInputError("parse_group: unknown family '" + family +
                          "' (expected gl+, sl, so, sp)");
}

double defining_residual(const GroupSpec& spec, const MatrixXd& g) {
  if (g.rows() != spec.n || g.cols() != spec.n)
    throw InvalidInputError("defining_residual: size mismatch");
  switch (spec.family) {
    case GroupFamily::GLplus:
      return g.determinant() > 0.0 ? 0.0 : kInf;
    case GroupFamily::SL:
      return std::abs(g.determinant() - 1.0);
    case GroupFamily::SO_n:
      return std::max((g.transpose() * g - MatrixXd::Identity(spec.n, spec.n)).norm(),
                      std::abs(g.determinant() - 1.0));
    case GroupFamily::SO_pq:
    case GroupFamily::Sp:
      return std::max((g.transpose() * spec.J * g - spec.J).norm(),
                      std::abs(g.determinant() - 1.0));
  }
  return kInf;
}

double defining_residual(const GroupSpec& spec, const MatrixXcd& g) {
  if (g.rows() != spec.n || g.cols() != spec.n)
    throw InvalidInputError("defining_residual: size mismatch");
  switch (spec.family) {
    case GroupFamily::GLplus:
      return std::abs(g.determinant()) > 0.0 ? 0.0 : kInf;
    case GroupFamily::SL:
      return std::abs(g.determinant() - 1.0);
    case GroupFamily::SO_n:
      return std::max(
          (g.transpose() * g - MatrixXcd::Identity(spec.n, spec.n)).norm(),
          std::abs(g.determinant() - 1.0));
    case GroupFamily::SO_pq:
    case GroupFamily::Sp: {
      const MatrixXcd jc = spec.J.cast<Complex>();
      return std::max((g.transpose() * jc * g - jc).norm(),
                      std::abs(g.determinant() - 1.0));
    }
  }
  return kInf;
}

MatrixXd sample_group(const GroupSpec& spec, double radius, RandomStream& rng) {
  if (!(radius >= 0.0) || radius > 2.0)
    throw InvalidInputError("sample_group: radius must lie in [0, 2]");
  MatrixXd x = MatrixXd::Zero(spec.n, spec.n);
  for (const MatrixXd& b : spec.algebra_basis)
    x += rng.uniform(-radius, radius) * b;
  return x.exp();
}

MatrixXd sample_group(const GroupSpec& spec, double radius, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_group(spec, radius, rng);
}

TubeSample sample_tube(const GroupSpec& spec, double delta, double radius,
                       RandomStream& rng) {
  if (!(delta > 0.0) || delta > 0.1)
    throw InvalidInputError("sample_tube: delta must lie in (0, 0.1]");
  TubeSample ts;
  ts.delta = delta;
  ts.g = sample_group(spec, radius, rng);

  MatrixXcd zeta = MatrixXcd::Zero(spec.n, spec.n);
  for (const MatrixXd& b : spec.algebra_basis)
    zeta += Complex(rng.normal(), rng.normal()) * b.cast<Complex>();
  const double target = 0.85 * delta * rng.uniform(0.25, 1.0);
  const double raw = operator_norm(zeta);
  if (raw > 0.0) {
    zeta *= target / raw;
    ts.p = zeta.exp();
    for (int k = 0; k < 3; ++k) {
      const double m = operator_norm(MatrixXcd(ts.p - MatrixXcd::Identity(spec.n, spec.n)));
      if (m <= 0.0 || std::abs(m - target) <= 0.02 * target) break;
      zeta *= target / m;
      ts.p = zeta.exp();
    }
    while (operator_norm(MatrixXcd(ts.p - MatrixXcd::Identity(spec.n, spec.n))) >=
           0.9 * delta) {
      zeta *= 0.8;
      ts.p = zeta.exp();
    }
  } else {
    ts.p = MatrixXcd::Identity(spec.n, spec.n);
  }
  ts.h = ts.g.cast<Complex>() * ts.p;
  return ts;
}

TubeSample sample_tube(const GroupSpec& spec, double delta, double radius,
                       std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_tube(spec, delta, radius, rng);
}

GroupPolarFactors group_polar(const GroupSpec& spec, const MatrixXd& g) {
  const double input_residual = defining_residual(spec, g);
  if (!(input_residual <= 1e-8))
    throw InvalidInputError("group_polar: input is not in the group, residual " +
                            std::to_string(input_residual));
  const RealPolarFactors rp = real_polar(g);
  GroupPolarFactors out;
  out.p_factor = rp.P;
  out.k_factor = rp.U;
  out.p_residual = defining_residual(spec, rp.P);
  out.k_residual = defining_residual(spec, rp.U);
  if (!(out.p_residual <= 1e-9) || !(out.k_residual <= 1e-9)) {
    std::ostringstream os;
    os << "group_polar: polar factor escapes " << spec.name
       << " (symmetric residual " << out.p_residual << ", orthogonal residual "
       << out.k_residual << ")";
    throw DomainError(os.str());
  }
  return out;
}

void require_siegel(const SiegelPoint& pt) {
  require_square(pt.z1, "siegel point z1");
  require_square(pt.z2, "siegel point z2");
  require_finite(pt.z1, "siegel point z1");
  require_finite(pt.z2, "siegel point z2");
  if (pt.z1.rows() != pt.z2.rows())
    throw InvalidInputError("siegel point: z1 and z2 sizes differ");
  if (!is_symmetric(pt.z1, 1e-10) || !is_symmetric(pt.z2, 1e-10))
    throw DomainError("siegel point: components must be symmetric");
  if (min_symmetric_eigenvalue(real_part(pt.z1)) <= 0.0 ||
      min_symmetric_eigenvalue(real_part(pt.z2)) <= 0.0)
    throw DomainError("siegel point: real parts must be positive definite");
}

SiegelPoint siegel_act(const MatrixXd& g, const SiegelPoint& pt) {
  require_siegel(pt);
  if (g.rows() != g.cols() || g.rows() != pt.z1.rows())
    throw InvalidInputError("siegel_act: size mismatch");
  Eigen::JacobiSVD<MatrixXd> svd(g);
  if (svd.singularValues()(svd.singularValues().size() - 1) <=
      1e-12 * svd.singularValues()(0))
    throw DomainError("siegel_act: g is numerically singular");
  const MatrixXcd gc = g.cast<Complex>();
  return SiegelPoint{gc * pt.z1 * gc.transpose(), gc * pt.z2 * gc.transpose()};
}

namespace {

// Columns are the images (X z1 + z1 X^T, X z2 + z2 X^T) of the algebra
// basis and of its i-multiples, flattened over the symmetric upper
// triangles into real coordinates.
MatrixXd tangent_matrix(const GroupSpec& spec, const SiegelPoint& pt) {
  const int n = spec.n;
  const int d = spec.dim();
  const int tri = n * (n + 1) / 2;
  MatrixXd a = MatrixXd::Zero(4 * tri, 2 * d);
  for (int j = 0; j < d; ++j) {
    const MatrixXcd xc = spec.algebra_basis[j].cast<Complex>();
    const MatrixXcd w1 = xc * pt.z1 + pt.z1 * xc.transpose();
    const MatrixXcd w2 = xc * pt.z2 + pt.z2 * xc.transpose();
    int row = 0;
    for (const MatrixXcd* w : {&w1, &w2}) {
      for (int r = 0; r < n; ++r) {
        for (int c = r; c < n; ++c) {
          const Complex v = (*w)(r, c);
          a(row, j) = v.real();
          a(row, d + j) = -v.imag();
          a(row + tri, j) = v.imag();
          a(row + tri, d + j) = v.real();
          ++row;
        }
      }
      row += tri;
    }
  }
  return a;
}

int real_rank(const MatrixXd& a) {
  if (a.size() == 0 || a.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<MatrixXd> qr(a);
  qr.setThreshold(1e-8);
  return static_cast<int>(qr.rank());
}

}  // namespace

TangentRank tangent_map_rank(const GroupSpec& spec, const SiegelPoint& pt) {
  require_siegel(pt);
  if (pt.z1.rows() != spec.n)
    throw InvalidInputError("tangent_map_rank: point size mismatch");
  TangentRank out;
  out.rank_real = real_rank(tangent_matrix(spec, pt));
  out.rank = out.rank_real / 2;
  out.kernel_dim = spec.dim() - out.rank;
  return out;
}

int totally_real_defect(const GroupSpec& spec, const SiegelPoint& pt) {
  require_siegel(pt);
  if (pt.z1.rows() != spec.n)
    throw InvalidInputError("totally_real_defect: point size mismatch");
  return 2 * spec.dim() - real_rank(tangent_matrix(spec, pt));
}

GenericPoint sample_generic_point(const GroupSpec& spec, std::uint64_t seed) {
  RandomStream rng(seed);
  const int n = spec.n;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const MatrixXd q = rng.normal_matrix(n, n);
    MatrixXd re1 = q * q.transpose();
    if (min_symmetric_eigenvalue(re1) <= 1e-6 * re1.norm()) continue;
    VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = 1.0 + i + 0.2 * rng.uniform();
    const MatrixXd re2 = q * lam.asDiagonal() * q.transpose();
    const MatrixXd y1 = 0.05 * rng.symmetric_matrix(n);
    const MatrixXd y2 = 0.05 * rng.symmetric_matrix(n);
    SiegelPoint pt;
    pt.z1 = re1.cast<Complex>() + Complex(0, 1) * y1.cast<Complex>();
    pt.z2 = re2.cast<Complex>() + Complex(0, 1) * y2.cast<Complex>();
    if (tangent_map_rank(spec, pt).kernel_dim == 0)
      return GenericPoint{pt, attempt};
  }
  throw NumericError("sample_generic_point: no generic point in 10 resamples for " +
                     spec.name);
}

}  // namespace holo
