#include "dp2pub/rng.hpp"

#include <stdexcept>

namespace dp2pub {

namespace {

// splitmix64 finalizer; full-period mixing of a 64-bit word.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

int RngStream::next_int(int bound) {
  if (bound <= 0) {
    throw std::invalid_argument("RngStream::next_int: bound must be positive");
  }
  const std::uint64_t n = static_cast<std::uint64_t>(bound);
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = next_u64();
  while (v >= limit) {
    v = next_u64();
  }
  return static_cast<int>(v % n);
}

int RngStream::sample(const Eigen::Ref<const Eigen::VectorXd>& weights) {
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("RngStream::sample: weights must sum > 0");
  }
  double u = next_double() * total;
  const Eigen::Index n = weights.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    u -= weights[i];
    if (u < 0.0) {
      return static_cast<int>(i);
    }
  }
  // Floating-point tail: fall back to the last positive-weight index.
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (weights[i] > 0.0) {
      return static_cast<int>(i);
    }
  }
  return static_cast<int>(n - 1);
}

}  // namespace dp2pub
