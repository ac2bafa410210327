#ifndef HOLO_RNG_HPP
#define HOLO_RNG_HPP

#include <array>
#include <cstdint>

#include "holo/common.hpp"

namespace holo {

/// Philox4x32-10 counter-based generator. A stream is addressed by
/// (seed, stream); blocks within a stream are addressed by a 64-bit
/// counter, so draws are reproducible regardless of scheduling.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// Next raw 32-bit word.
  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller.
  double normal();

  VectorXd normal_vector(int n);
  /// Uniform on the unit sphere in R^n.
  VectorXd unit_vector(int n);
  MatrixXd normal_matrix(int rows, int cols);
  /// Random real symmetric matrix with standard normal entries.
  MatrixXd symmetric_matrix(int n);

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t counter) const;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace holo

#endif
