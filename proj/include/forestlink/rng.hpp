#pragma once

#include <array>
#include <cstdint>

namespace forestlink {

// Philox4x32-10 counter-based generator.
//
// A stream is keyed by (seed, stream id). Streams never share output, so a
// simulation can hand stream i to trial i and get results that do not depend
// on how trials are distributed over worker threads.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_unit();

private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int pos_ = 4;  // empty; first use refills
};

// One Philox4x32-10 block, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Stable mixing of a base seed with a salt, for deriving independent
// sub-seeds (per scenario, per hop, ...) from one user-facing seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace forestlink
