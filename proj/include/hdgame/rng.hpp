#ifndef HDGAME_RNG_HPP
#define HDGAME_RNG_HPP

#include <cstdint>
#include <random>

#include "hdgame/types.hpp"

namespace hdgame {

// Stream derivation: child streams are keyed off (seed, tag) so that adding
// consumers never shifts another stream.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t tag);

// mt19937_64 with hand-rolled uniform/normal draws. std::*_distribution is
// implementation-defined, which would break byte-for-byte reproducibility of
// generated games across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();
  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Matrix random_orthogonal(int dim, Rng& rng);

}  // namespace hdgame

#endif
