#include "holo/snf.hpp"

#include <cstdlib>
#include <sstream>

namespace holo {

namespace {

using Index = Eigen::Index;

[[noreturn]] void overflow() {
  throw NumericError("integer overflow in exact lattice arithmetic");
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

namespace {

IntMatrix checked_matmul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw InvalidInputError("checked_matmul: shape mismatch");
  IntMatrix r = IntMatrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      std::int64_t acc = 0;
      for (Index t = 0; t < a.cols(); ++t)
        acc = checked_add(acc, checked_mul(a(i, t), b(t, j)));
      r(i, j) = acc;
    }
  return r;
}

bool int_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// Elementary operations applied simultaneously to the work matrix,
// the accumulated transform and its tracked inverse.
struct SNFWork {
  IntMatrix d, u, u_inv, v, v_inv;

  void swap_rows(Index a, Index b) {
    d.row(a).swap(d.row(b));
    u.row(a).swap(u.row(b));
    u_inv.col(a).swap(u_inv.col(b));
  }
  void swap_cols(Index a, Index b) {
    d.col(a).swap(d.col(b));
    v.col(a).swap(v.col(b));
    v_inv.row(a).swap(v_inv.row(b));
  }
  // row r += q * row t
  void add_row(Index r, Index t, std::int64_t q) {
    for (Index c = 0; c < d.cols(); ++c)
      d(r, c) = checked_add(d(r, c), checked_mul(q, d(t, c)));
    for (Index c = 0; c < u.cols(); ++c)
      u(r, c) = checked_add(u(r, c), checked_mul(q, u(t, c)));
    for (Index c = 0; c < u_inv.rows(); ++c)
      u_inv(c, t) = checked_sub(u_inv(c, t), checked_mul(q, u_inv(c, r)));
  }
  // col c += q * col t
  void add_col(Index c, Index t, std::int64_t q) {
    for (Index r = 0; r < d.rows(); ++r)
      d(r, c) = checked_add(d(r, c), checked_mul(q, d(r, t)));
    for (Index r = 0; r < v.rows(); ++r)
      v(r, c) = checked_add(v(r, c), checked_mul(q, v(r, t)));
    for (Index r = 0; r < v_inv.cols(); ++r)
      v_inv(t, r) = checked_sub(v_inv(t, r), checked_mul(q, v_inv(c, r)));
  }
  void negate_row(Index r) {
    for (Index c = 0; c < d.cols(); ++c) d(r, c) = checked_neg(d(r, c));
    for (Index c = 0; c < u.cols(); ++c) u(r, c) = checked_neg(u(r, c));
    for (Index c = 0; c < u_inv.rows(); ++c)
      u_inv(c, r) = checked_neg(u_inv(c, r));
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  SNFWork w;
  w.d = m;
  w.u = IntMatrix::Identity(rows, rows);
  w.u_inv = IntMatrix::Identity(rows, rows);
  w.v = IntMatrix::Identity(cols, cols);
  w.v_inv = IntMatrix::Identity(cols, cols);

  const Index steps = std::min(rows, cols);
  bool rest_is_zero = false;
  for (Index t = 0; t < steps && !rest_is_zero; ++t) {
    while (true) {
      Index pi = -1, pj = -1;
      std::int64_t best = 0;
      for (Index r = t; r < rows; ++r)
        for (Index c = t; c < cols; ++c) {
          const std::int64_t mag = std::abs(w.d(r, c));
          if (mag != 0 && (pi < 0 || mag < best)) {
            best = mag;
            pi = r;
            pj = c;
          }
        }
      if (pi < 0) {
        rest_is_zero = true;
        break;
      }
      if (pi != t) w.swap_rows(pi, t);
      if (pj != t) w.swap_cols(pj, t);

      bool dirty = false;
      for (Index r = t + 1; r < rows; ++r) {
        if (w.d(r, t) == 0) continue;
        w.add_row(r, t, -(w.d(r, t) / w.d(t, t)));
        if (w.d(r, t) != 0) dirty = true;
      }
      for (Index c = t + 1; c < cols; ++c) {
        if (w.d(t, c) == 0) continue;
        w.add_col(c, t, -(w.d(t, c) / w.d(t, t)));
        if (w.d(t, c) != 0) dirty = true;
      }
      if (dirty) continue;

      bool fixed = false;
      for (Index r = t + 1; r < rows && !fixed; ++r)
        for (Index c = t + 1; c < cols && !fixed; ++c)
          if (w.d(r, c) % w.d(t, t) != 0) {
            w.add_row(t, r, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
  }
  for (Index t = 0; t < steps; ++t)
    if (w.d(t, t) < 0) w.negate_row(t);

  if (!int_equal(checked_matmul(checked_matmul(w.u, m), w.v), w.d))
    throw NumericError("smith_normal_form: internal verification failed");

  SNFResult out;
  out.U = w.u;
  out.V = w.v;
  out.D = w.d;
  out.U_inv = w.u_inv;
  out.V_inv = w.v_inv;
  return out;
}

std::int64_t integer_det(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw InvalidInputError("integer_det: matrix must be square");
  const Index n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (Index t = 0; t + 1 < n; ++t) {
    if (a(t, t) == 0) {
      Index swap = -1;
      for (Index r = t + 1; r < n; ++r)
        if (a(r, t) != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      a.row(t).swap(a.row(swap));
      sign = -sign;
    }
    for (Index r = t + 1; r < n; ++r)
      for (Index c = t + 1; c < n; ++c) {
        const std::int64_t num = checked_sub(checked_mul(a(r, c), a(t, t)),
                                             checked_mul(a(r, t), a(t, c)));
        a(r, c) = num / prev;
      }
    prev = a(t, t);
  }
  return checked_mul(sign, a(n - 1, n - 1));
}

AbelianSplit split_abelian(const IntMatrix& relations) {
  const SNFResult snf = smith_normal_form(relations);
  AbelianSplit out;
  int nonzero = 0;
  const Index steps = std::min(relations.rows(), relations.cols());
  for (Index i = 0; i < steps; ++i) {
    const std::int64_t d = snf.D(i, i);
    if (d != 0) ++nonzero;
    if (d > 1) out.torsion_invariants.push_back(d);
  }
  out.free_rank = static_cast<int>(relations.rows()) - nonzero;
  return out;
}

IntMatrix extend_lattice_basis(const IntMatrix& c) {
  if (c.rows() < 1)
    throw InvalidInputError("extend_lattice_basis: empty ambient lattice");
  const SNFResult snf = smith_normal_form(c);
  std::vector<std::int64_t> torsion;
  const Index steps = std::min(c.rows(), c.cols());
  for (Index i = 0; i < steps; ++i)
    if (snf.D(i, i) > 1) torsion.push_back(snf.D(i, i));
  if (!torsion.empty()) {
    std::ostringstream os;
    os << "extend_lattice_basis: quotient has torsion, invariant factors";
    for (std::int64_t d : torsion) os << " " << d;
    throw DomainError(os.str());
  }
  return snf.U_inv;
}

bool lattice_contains(const IntMatrix& a,
                      const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>& b) {
  if (a.rows() != b.rows())
    throw InvalidInputError("lattice_contains: dimension mismatch");
  const SNFResult snf = smith_normal_form(a);
  const IntMatrix ub = checked_matmul(snf.U, b);
  const Index steps = std::min(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    const std::int64_t rhs = ub(i, 0);
    const std::int64_t d = i < steps ? snf.D(i, i) : 0;
    if (d == 0) {
      if (rhs != 0) return false;
    } else if (rhs % d != 0) {
      return false;
    }
  }
  return true;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows())
    throw InvalidInputError("same_lattice: dimension mismatch");
  for (Index j = 0; j < b.cols(); ++j)
    if (!lattice_contains(a, b.col(j))) return false;
  for (Index j = 0; j < a.cols(); ++j)
    if (!lattice_contains(b, a.col(j))) return false;
  return true;
}

}  // namespace holo
