#ifndef DP2PUB_RNG_HPP
#define DP2PUB_RNG_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace dp2pub {

// Stage tags for substream derivation. Every random stage of a pipeline run
// draws from a stream seeded by mix_seed(master, stage, index...), so serial
// and parallel executions of the same configuration produce identical output.
namespace stage {
inline constexpr std::uint64_t kNetwork = 1;
inline constexpr std::uint64_t kClusterHeads = 2;
inline constexpr std::uint64_t kFirstPerturb = 3;
inline constexpr std::uint64_t kSecondPerturb = 4;
inline constexpr std::uint64_t kClient = 5;
inline constexpr std::uint64_t kSweep = 6;
inline constexpr std::uint64_t kSubsetSample = 7;
}  // namespace stage

// Derives a substream seed from a master seed and up to three stage words.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a,
                       std::uint64_t b = 0, std::uint64_t c = 0);

// Deterministic random stream. Doubles are built from the raw 64-bit output
// so the sequence does not depend on library distribution internals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  int next_int(int bound);

  // Samples an index proportionally to non-negative weights (sum > 0).
  int sample(const Eigen::Ref<const Eigen::VectorXd>& weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dp2pub

#endif  // DP2PUB_RNG_HPP
