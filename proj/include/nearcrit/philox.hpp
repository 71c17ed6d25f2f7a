#pragma once

#include <array>
#include <cstdint>

namespace nearcrit {

/// Philox4x64-10 counter-based generator (Salmon et al., Random123).
///
/// Every output block is a pure function of (counter, key), which is what lets
/// Monte Carlo samples be generated in any order, on any worker, and still be
/// bit-identical to a serial run.
using PhiloxCounter = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

PhiloxCounter philox4x64(PhiloxCounter counter, PhiloxKey key);

/// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Stream tags keep independent experiment families on disjoint key spaces.
enum class StreamTag : std::uint64_t {
  Crossing = 1,
  Arms = 2,
  Asymmetry = 3,
  Length = 4,
  Dimension = 5,
  GoodTriangle = 6,
  FHat = 7,
  Pivotal = 8,
  Regime = 9,
  Derive = 0xfeedULL,
};

/// Deterministically derives a 64-bit sub-seed from a master seed and two
/// integers; used for nested randomness (e.g. one resampling family per
/// good triangle per sample).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b);

/// Uniform in [0, 1) for item `index` of stream `stream_id` under (seed, tag).
double counter_uniform(std::uint64_t seed, StreamTag tag, std::uint64_t stream_id,
                       std::uint64_t index);

}  // namespace nearcrit
