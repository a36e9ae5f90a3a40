#pragma once

#include <cstdint>
#include <random>

#include "slbracket/matrix.hpp"

namespace slb {

// Deterministic seed derivation for independent sub-streams (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

// Seeded random source for field elements, vectors and matrices.  Built on
// mt19937_64 with modulo draws; the tiny bias is irrelevant at desk-scale
// field sizes and keeps the streams identical across platforms, which the
// reproducibility contract needs (uniform_int_distribution does not promise
// that).  Rational-field draws come from the integer box {-3..3}.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  std::uint64_t bounded(std::uint64_t m);  // uniform-ish in [0, m)

  Scalar scalar(const Field& f);
  Scalar nonzero_scalar(const Field& f);
  Vec vector(const Field& f, int n);
  Vec nonzero_vector(const Field& f, int n);
  Mat matrix(const Field& f, int n);
  Mat nonzero_matrix(const Field& f, int n);
  Mat trace_zero_matrix(const Field& f, int n);
  Mat nonzero_trace_zero_matrix(const Field& f, int n);
  Mat invertible_matrix(const Field& f, int n);

 private:
  std::mt19937_64 gen_;
};

}  // namespace slb
