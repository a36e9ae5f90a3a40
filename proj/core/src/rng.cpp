#include "slbracket/rng.hpp"

namespace slb {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::bounded(std::uint64_t m) {
  if (m == 0) throw error("bounded draw from empty range");
  return gen_() % m;
}

Scalar Rng::scalar(const Field& f) {
  if (f->is_finite()) return f->element(static_cast<std::int64_t>(bounded(f->order())));
  return f->from_int(static_cast<std::int64_t>(bounded(7)) - 3);
}

Scalar Rng::nonzero_scalar(const Field& f) {
  if (f->is_finite()) return f->element(1 + static_cast<std::int64_t>(bounded(f->order() - 1)));
  while (true) {
    Scalar s = scalar(f);
    if (!s.is_zero()) return s;
  }
}

Vec Rng::vector(const Field& f, int n) {
  Vec v(f, n);
  for (int i = 0; i < n; ++i) v.at(i) = scalar(f);
  return v;
}

Vec Rng::nonzero_vector(const Field& f, int n) {
  while (true) {
    Vec v = vector(f, n);
    if (!v.is_zero()) return v;
  }
}

Mat Rng::matrix(const Field& f, int n) {
  Mat m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = scalar(f);
  return m;
}

Mat Rng::nonzero_matrix(const Field& f, int n) {
  while (true) {
    Mat m = matrix(f, n);
    if (!m.is_zero()) return m;
  }
}

Mat Rng::trace_zero_matrix(const Field& f, int n) {
  // all entries free except the last diagonal one, which balances the trace
  Mat m = matrix(f, n);
  Scalar s = f->zero();
  for (int i = 0; i + 1 < n; ++i) s += m.at(i, i);
  m.at(n - 1, n - 1) = -s;
  return m;
}

Mat Rng::nonzero_trace_zero_matrix(const Field& f, int n) {
  while (true) {
    Mat m = trace_zero_matrix(f, n);
    if (!m.is_zero()) return m;
  }
}

Mat Rng::invertible_matrix(const Field& f, int n) {
  while (true) {
    Mat m = matrix(f, n);
    if (try_inverse(m)) return m;
  }
}

}  // namespace slb
