#ifndef HOLO_SNF_HPP
#define HOLO_SNF_HPP

#include <cstdint>
#include <vector>

#include "holo/common.hpp"

namespace holo {

/// U M V = D with U, V unimodular and D diagonal with nonnegative
/// entries satisfying d1 | d2 | ... All arithmetic is overflow-checked
/// 64-bit integer; overflow raises a numeric error instead of wrapping.
struct SNFResult {
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
  IntMatrix U_inv;
  IntMatrix V_inv;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_neg(std::int64_t a);

SNFResult smith_normal_form(const IntMatrix& m);

/// Exact determinant by fraction-free elimination.
std::int64_t integer_det(const IntMatrix& m);

struct AbelianSplit {
  std::vector<std::int64_t> torsion_invariants;
  int free_rank = 0;
};

/// Structure of Z^k / image(relations): invariant factors > 1 and the
/// free rank.
AbelianSplit split_abelian(const IntMatrix& relations);

/// Completes the sublattice spanned by the columns of c to a basis of
/// Z^k; the first rank(c) columns of the result generate the same
/// sublattice. Fails when the quotient has torsion.
IntMatrix extend_lattice_basis(const IntMatrix& c);

/// True iff b lies in the lattice generated by the columns of a.
bool lattice_contains(const IntMatrix& a, const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>& b);

/// True iff the columns of a and b generate the same sublattice.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace holo

#endif
