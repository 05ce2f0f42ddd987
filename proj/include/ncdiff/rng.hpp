#pragma once

#include <cstdint>

#include "ncdiff/matrix.hpp"

namespace ncdiff {

/// splitmix64 — tiny deterministic generator so that seeded reports are
/// byte-identical across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi] (small ranges only; modulo bias is irrelevant here).
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small scalar in {-3,...,3}.
  template <Field K>
  K small_scalar() {
    return K(range(-3, 3));
  }

  /// Random vector with small coordinates.
  template <Field K>
  Vec<K> small_vec(int n) {
    Vec<K> v(n);
    for (int i = 0; i < n; ++i) v[i] = small_scalar<K>();
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ncdiff
