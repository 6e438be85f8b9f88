// Exhaustive ball around the origin at cubie level: exact distances for every
// state within a small radius. This is the exactness oracle for the solver.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubemix/cube.hpp"

namespace cubemix {

inline constexpr int kBfsDepthGuard = 6;

struct BfsTable {
  int max_depth = 0;
  /// layers[d] holds the packed keys of every state at exact distance d, sorted.
  std::vector<std::vector<StateKey>> layers;
  std::vector<std::uint64_t> layer_counts;

  /// Exact distance when the state lies within max_depth.
  std::optional<int> distance(const CubeState& s) const;
  std::uint64_t size() const;
};

/// Depths above kBfsDepthGuard throw MemoryGuardError unless allow_deep is set.
BfsTable bfs_enumerate(int max_depth, bool allow_deep = false);

}  // namespace cubemix
