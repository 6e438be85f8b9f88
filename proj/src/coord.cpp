#include "cubemix/coord.hpp"

#include <stdexcept>

#include "cubemix/rng.hpp"

namespace cubemix {
namespace {

// For each move: where the cubie in slot t ends up, and the twist/flip it picks up.
struct SlotAction {
  std::array<std::array<std::uint8_t, kCornerCount>, kMoveCount> corner_dest{};
  std::array<std::array<std::uint8_t, kCornerCount>, kMoveCount> corner_twist{};
  std::array<std::array<std::uint8_t, kEdgeCount>, kMoveCount> edge_dest{};
  std::array<std::array<std::uint8_t, kEdgeCount>, kMoveCount> edge_flip{};
};

const SlotAction& slot_action() {
  static const SlotAction action = [] {
    SlotAction a;
    for (Move m : all_moves()) {
      const CubeState& g = generator_state(m);
      for (int s = 0; s < kCornerCount; ++s) {
        a.corner_dest[m.index()][g.corner_perm[s]] = static_cast<std::uint8_t>(s);
        a.corner_twist[m.index()][g.corner_perm[s]] = g.corner_ori[s];
      }
      for (int s = 0; s < kEdgeCount; ++s) {
        a.edge_dest[m.index()][g.edge_perm[s]] = static_cast<std::uint8_t>(s);
        a.edge_flip[m.index()][g.edge_perm[s]] = g.edge_ori[s];
      }
    }
    return a;
  }();
  return action;
}

CornerMoveTables build_corner_tables() {
  CornerMoveTables t;
  t.perm.resize(static_cast<std::size_t>(kCornerPermCount) * kMoveCount);
  t.ori.resize(static_cast<std::size_t>(kCornerOriCount) * kMoveCount);
  for (std::uint32_t p = 0; p < kCornerPermCount; ++p) {
    CornerConfig c;
    c.perm = permutation_unrank<kCornerCount>(p);
    for (Move m : all_moves())
      t.perm[p * kMoveCount + m.index()] = static_cast<std::uint16_t>(permutation_rank(apply_move(c, m).perm));
  }
  for (std::uint32_t o = 0; o < kCornerOriCount; ++o) {
    CornerConfig c;
    c.ori = corner_ori_unrank(o);
    for (Move m : all_moves())
      t.ori[m.index() * kCornerOriCount + o] = static_cast<std::uint16_t>(corner_ori_rank(apply_move(c, m).ori));
  }

  RngStream rng(0x636f726e6572ULL, 0);
  for (int trial = 0; trial < 4096; ++trial) {
    const auto flat = static_cast<std::uint32_t>(rng.uniform_below(kCornerCoordCount));
    const CornerConfig c = decode(CornerCoordinate::from_flat(flat));
    for (Move m : all_moves()) {
      if (t.next_flat(flat, m.index()) != corner_coordinate(apply_move(c, m)).flat())
        throw std::logic_error("corner coordinate does not factorize under move " + format_move(m));
    }
  }
  return t;
}

EdgeMoveTables build_edge_tables() {
  const SlotAction& a = slot_action();
  EdgeMoveTables t;
  t.position.resize(static_cast<std::size_t>(kEdgePositionCount) * kMoveCount);
  t.flip_mask.resize(static_cast<std::size_t>(kEdgePositionCount) * kMoveCount);
  for (std::uint32_t r = 0; r < kEdgePositionCount; ++r) {
    const auto slots = edge_position_unrank(r);
    for (int m = 0; m < kMoveCount; ++m) {
      std::array<std::uint8_t, kTrackedEdges> moved{};
      std::uint8_t mask = 0;
      for (int k = 0; k < kTrackedEdges; ++k) {
        moved[k] = a.edge_dest[m][slots[k]];
        mask |= static_cast<std::uint8_t>(a.edge_flip[m][slots[k]] << k);
      }
      const std::size_t i = static_cast<std::size_t>(r) * kMoveCount + m;
      t.position[i] = edge_position_rank(moved);
      t.flip_mask[i] = mask;
    }
  }
  return t;
}

}  // namespace

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

CornerConfig corner_config(const CubeState& s) { return {s.corner_perm, s.corner_ori}; }

CornerConfig compose(const CornerConfig& a, const CornerConfig& b) {
  CornerConfig out;
  for (int s = 0; s < kCornerCount; ++s) {
    out.perm[s] = a.perm[b.perm[s]];
    out.ori[s] = static_cast<std::uint8_t>((a.ori[b.perm[s]] + b.ori[s]) % 3);
  }
  return out;
}

CornerConfig apply_move(const CornerConfig& c, Move m) {
  return compose(c, corner_config(generator_state(m)));
}

std::uint32_t corner_ori_rank(const std::array<std::uint8_t, kCornerCount>& ori) {
  std::uint32_t r = 0;
  for (int i = 0; i < kCornerCount - 1; ++i) r = r * 3 + ori[i];
  return r;
}

std::array<std::uint8_t, kCornerCount> corner_ori_unrank(std::uint32_t rank) {
  std::array<std::uint8_t, kCornerCount> ori{};
  int twist = 0;
  for (int i = kCornerCount - 2; i >= 0; --i) {
    ori[i] = static_cast<std::uint8_t>(rank % 3);
    twist += ori[i];
    rank /= 3;
  }
  ori[kCornerCount - 1] = static_cast<std::uint8_t>((3 - twist % 3) % 3);
  return ori;
}

CornerCoordinate corner_coordinate(const CornerConfig& c) {
  return {permutation_rank(c.perm), corner_ori_rank(c.ori)};
}

CornerCoordinate corner_coordinate(const CubeState& s) { return corner_coordinate(corner_config(s)); }

CornerConfig decode(CornerCoordinate coord) {
  if (coord.perm_rank >= kCornerPermCount || coord.ori_rank >= kCornerOriCount)
    throw std::out_of_range("corner coordinate out of range");
  return {permutation_unrank<kCornerCount>(coord.perm_rank), corner_ori_unrank(coord.ori_rank)};
}

std::uint32_t edge_position_rank(const std::array<std::uint8_t, kTrackedEdges>& slots) {
  std::uint32_t rank = 0;
  for (int i = 0; i < kTrackedEdges; ++i) {
    std::uint32_t digit = slots[i];
    for (int j = 0; j < i; ++j)
      if (slots[j] < slots[i]) --digit;
    rank = rank * static_cast<std::uint32_t>(kEdgeCount - i) + digit;
  }
  return rank;
}

std::array<std::uint8_t, kTrackedEdges> edge_position_unrank(std::uint32_t rank) {
  std::array<std::uint32_t, kTrackedEdges> digits{};
  for (int i = kTrackedEdges - 1; i >= 0; --i) {
    const auto radix = static_cast<std::uint32_t>(kEdgeCount - i);
    digits[i] = rank % radix;
    rank /= radix;
  }
  std::array<std::uint8_t, kTrackedEdges> out{};
  std::array<bool, kEdgeCount> used{};
  for (int i = 0; i < kTrackedEdges; ++i) {
    std::uint32_t skip = digits[i];
    for (int v = 0; v < kEdgeCount; ++v) {
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

EdgePattern edge_pattern(const CubeState& s, EdgeSet set) {
  std::array<std::uint8_t, kEdgeCount> where{};
  for (int slot = 0; slot < kEdgeCount; ++slot) where[s.edge_perm[slot]] = static_cast<std::uint8_t>(slot);
  std::array<std::uint8_t, kTrackedEdges> slots{};
  std::uint8_t flips = 0;
  for (int k = 0; k < kTrackedEdges; ++k) {
    slots[k] = where[first_cubie(set) + k];
    flips |= static_cast<std::uint8_t>(s.edge_ori[slots[k]] << k);
  }
  return {edge_position_rank(slots), flips};
}

const CornerMoveTables& corner_move_tables() {
  static const CornerMoveTables tables = build_corner_tables();
  return tables;
}

const EdgeMoveTables& edge_move_tables() {
  static const EdgeMoveTables tables = build_edge_tables();
  return tables;
}

}  // namespace cubemix
