#ifndef HOLO_LIEGROUPS_HPP
#define HOLO_LIEGROUPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "holo/common.hpp"
#include "holo/rng.hpp"

namespace holo {

enum class GroupFamily { GLplus, SL, SO_n, SO_pq, Sp };

constexpr int kMaxGroupSize = 16;

/// A classical linear group together with a basis of its Lie algebra
/// and the bilinear form J entering its defining equations.
struct GroupSpec {
  GroupFamily family;
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<MatrixXd> algebra_basis;
  MatrixXd J;
  std::string name;

  int dim() const { return static_cast<int>(algebra_basis.size()); }
};

GroupSpec make_group(GroupFamily family, int n, int p = 0, int q = 0);

/// Accepts gl+:n, sl:n, so:n, so:p,q, sp:2m.
GroupSpec parse_group(const std::string& name);

/// Max residual of the defining equations (det g - 1, g^T J g - J,
/// g^T g - I, as applicable). Infinite when det fails its sign test.
double defining_residual(const GroupSpec& spec, const MatrixXd& g);
/// Same equations on the complexified group, with the bilinear
/// transpose (no conjugation).
double defining_residual(const GroupSpec& spec, const MatrixXcd& g);

/// exp(sum c_i X_i) with c_i uniform in [-radius, radius].
MatrixXd sample_group(const GroupSpec& spec, double radius, RandomStream& rng);
MatrixXd sample_group(const GroupSpec& spec, double radius, std::uint64_t seed);

struct TubeSample {
  MatrixXcd h;
  MatrixXd g;
  MatrixXcd p;
  double delta = 0.0;
};

/// h = g p with g in G and p = exp(zeta) in the complexified group,
/// ||p - I|| < delta in the operator norm.
TubeSample sample_tube(const GroupSpec& spec, double delta, double radius,
                       RandomStream& rng);
TubeSample sample_tube(const GroupSpec& spec, double delta, double radius,
                       std::uint64_t seed);

struct GroupPolarFactors {
  MatrixXd p_factor;
  MatrixXd k_factor;
  double p_residual = 0.0;
  double k_residual = 0.0;
};

/// Polar decomposition g = P K with both factors required to stay in
/// the group (residuals <= 1e-9); throws when a factor escapes.
GroupPolarFactors group_polar(const GroupSpec& spec, const MatrixXd& g);

struct SiegelPoint {
  MatrixXcd z1;
  MatrixXcd z2;
};

/// z1, z2 symmetric with positive definite real parts.
void require_siegel(const SiegelPoint& pt);

/// g . (z1, z2) = (g z1 g^T, g z2 g^T).
SiegelPoint siegel_act(const MatrixXd& g, const SiegelPoint& pt);

struct TangentRank {
  int rank_real = 0;
  int rank = 0;
  int kernel_dim = 0;
};

/// Rank of the real-linear map xi -> (xi z1 + z1 xi^T, xi z2 + z2 xi^T)
/// over the complexified algebra; rank is the complex rank and
/// kernel_dim = dim G - rank.
TangentRank tangent_map_rank(const GroupSpec& spec, const SiegelPoint& pt);

/// dim(T intersect iT) for T the real tangent span of the orbit at pt,
/// computed as 2 dim G - rank over R of the basis images and their
/// i-multiples. Zero iff the orbit is totally real at pt.
int totally_real_defect(const GroupSpec& spec, const SiegelPoint& pt);

struct GenericPoint {
  SiegelPoint pt;
  int resamples = 0;
};

/// Random Siegel point with distinct-eigenvalue real parts, resampled
/// (at most 10 times) until the tangent kernel is trivial.
GenericPoint sample_generic_point(const GroupSpec& spec, std::uint64_t seed);

}  // namespace holo

#endif
