// Integer coordinates for cube sub-states and their move tables.
//
// Corner coordinate: flat = perm_rank * 2187 + ori_rank, where perm_rank is
// the Lehmer rank of corner_perm and ori_rank is the base-3 number formed by
// corner_ori[0..6] (slot 0 most significant). The origin maps to 0.
//
// Edge pattern coordinate (for the 6-edge pattern databases): the slots of
// six tracked edge cubies, ranked as a partial permutation of 12 (665,280
// values), times 64, plus the flips of the tracked cubies as bits.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cubemix/cube.hpp"

namespace cubemix {

inline constexpr std::uint32_t kCornerPermCount = 40320;
inline constexpr std::uint32_t kCornerOriCount = 2187;
inline constexpr std::uint32_t kCornerCoordCount = kCornerPermCount * kCornerOriCount;  // 88,179,840

inline constexpr int kTrackedEdges = 6;
inline constexpr std::uint32_t kEdgePositionCount = 665280;  // 12! / 6!
inline constexpr std::uint32_t kEdgePatternCount = kEdgePositionCount * 64;  // 42,577,920

std::uint64_t factorial(int n);

/// Lehmer-code rank of a permutation of 0..N-1; identity ranks 0.
template <std::size_t N>
std::uint32_t permutation_rank(const std::array<std::uint8_t, N>& p) {
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < N; ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < N; ++j)
      if (p[j] < p[i]) ++smaller;
    rank = rank * static_cast<std::uint32_t>(N - i) + smaller;
  }
  return rank;
}

template <std::size_t N>
std::array<std::uint8_t, N> permutation_unrank(std::uint32_t rank) {
  std::array<std::uint32_t, N> digits{};
  for (std::size_t i = N; i-- > 0;) {
    const auto radix = static_cast<std::uint32_t>(N - i);
    digits[i] = rank % radix;
    rank /= radix;
  }
  std::array<std::uint8_t, N> out{};
  std::array<bool, N> used{};
  for (std::size_t i = 0; i < N; ++i) {
    std::uint32_t skip = digits[i];
    for (std::size_t v = 0; v < N; ++v) {
      if (used[v]) continue;
      if (skip-- == 0) {
        out[i] = static_cast<std::uint8_t>(v);
        used[v] = true;
        break;
      }
    }
  }
  return out;
}

struct CornerConfig {
  std::array<std::uint8_t, kCornerCount> perm{0, 1, 2, 3, 4, 5, 6, 7};
  std::array<std::uint8_t, kCornerCount> ori{};
  friend bool operator==(const CornerConfig&, const CornerConfig&) = default;
};

CornerConfig corner_config(const CubeState& s);
/// Right action of a move on the corner configuration.
CornerConfig apply_move(const CornerConfig& c, Move m);
CornerConfig compose(const CornerConfig& a, const CornerConfig& b);

struct CornerCoordinate {
  std::uint32_t perm_rank = 0;
  std::uint32_t ori_rank = 0;

  std::uint32_t flat() const { return perm_rank * kCornerOriCount + ori_rank; }
  static CornerCoordinate from_flat(std::uint32_t flat) {
    return {flat / kCornerOriCount, flat % kCornerOriCount};
  }
  friend bool operator==(const CornerCoordinate&, const CornerCoordinate&) = default;
};

std::uint32_t corner_ori_rank(const std::array<std::uint8_t, kCornerCount>& ori);
std::array<std::uint8_t, kCornerCount> corner_ori_unrank(std::uint32_t rank);

CornerCoordinate corner_coordinate(const CornerConfig& c);
CornerCoordinate corner_coordinate(const CubeState& s);
CornerConfig decode(CornerCoordinate coord);

enum class EdgeSet : std::uint8_t { A = 0, B = 1 };  // cubies 0..5 and 6..11
constexpr int first_cubie(EdgeSet set) { return set == EdgeSet::A ? 0 : kTrackedEdges; }

std::uint32_t edge_position_rank(const std::array<std::uint8_t, kTrackedEdges>& slots);
std::array<std::uint8_t, kTrackedEdges> edge_position_unrank(std::uint32_t rank);

struct EdgePattern {
  std::uint32_t position_rank = 0;
  std::uint8_t flips = 0;  // bit k: flip of tracked cubie k
  std::uint32_t flat() const { return position_rank * 64 + flips; }
};

EdgePattern edge_pattern(const CubeState& s, EdgeSet set);

/// perm[p * 18 + m] and ori[m * 2187 + o]: the corner coordinate factorizes
/// into independent permutation and orientation transitions.
struct CornerMoveTables {
  std::vector<std::uint16_t> perm;
  std::vector<std::uint16_t> ori;

  std::uint32_t next_perm(std::uint32_t p, int m) const { return perm[p * kMoveCount + m]; }
  std::uint32_t next_ori(std::uint32_t o, int m) const { return ori[m * kCornerOriCount + o]; }
  std::uint32_t next_flat(std::uint32_t flat, int m) const {
    return next_perm(flat / kCornerOriCount, m) * kCornerOriCount + next_ori(flat % kCornerOriCount, m);
  }
};

/// Built from cubie-level application of each move; the factorization is
/// checked against the cubie engine and a mismatch throws std::logic_error.
const CornerMoveTables& corner_move_tables();

/// position[r * 18 + m] is the new position rank; flip_mask[r * 18 + m] the
/// flip bits toggled on the tracked cubies.
struct EdgeMoveTables {
  std::vector<std::uint32_t> position;
  std::vector<std::uint8_t> flip_mask;

  std::uint32_t next_flat(std::uint32_t flat, int m) const {
    const std::uint32_t r = flat >> 6;
    const std::size_t i = static_cast<std::size_t>(r) * kMoveCount + m;
    return (position[i] << 6) | ((flat & 63) ^ flip_mask[i]);
  }
};

const EdgeMoveTables& edge_move_tables();

}  // namespace cubemix
