// Counter-based random streams (Philox4x32-10).
//
// A stream is identified by (root_seed, stream_id). Block b of the stream is
// Philox4x32-10 applied to counter {b_lo, b_hi, stream_lo, stream_hi} under
// key {seed_lo, seed_hi}; each block yields two 64-bit words (low word
// first). Outputs therefore depend only on (root_seed, stream_id, position),
// never on which worker produced them.
#pragma once

#include <array>
#include <cstdint>

namespace cubemix {

using Philox4x32Block = std::array<std::uint32_t, 4>;

/// The raw Philox4x32 bijection with 10 rounds.
Philox4x32Block philox4x32_10(Philox4x32Block counter, std::array<std::uint32_t, 2> key);

class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::uint64_t stream_id) : seed_(root_seed), stream_(stream_id) {}

  std::uint64_t root_seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();
  /// Uniform integer in [0, bound) without modulo bias (Lemire's multiply-shift with rejection).
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Child stream under the same root seed, for per-item or per-replicate use.
  RngStream split(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::uint64_t buffered_ = 0;
};

/// SplitMix64 finalizer; used to derive child stream ids.
std::uint64_t mix64(std::uint64_t x);

/// Stream-id layout used by the sampling pipeline:
///   bits 56..63 purpose tag, bits 40..55 (step + 1), bits 0..39 sample index.
/// Step -1 denotes stationary samples.
enum class StreamPurpose : std::uint8_t { Walk = 1, Stationary = 2, Bootstrap = 3, Cli = 4 };
std::uint64_t sample_stream_id(StreamPurpose purpose, int step, std::uint64_t sample_index);

}  // namespace cubemix
