#include "cubemix/bfs.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "cubemix/memory_guard.hpp"

namespace cubemix {

std::optional<int> BfsTable::distance(const CubeState& s) const {
  const StateKey k = pack(s);
  for (std::size_t d = 0; d < layers.size(); ++d)
    if (std::binary_search(layers[d].begin(), layers[d].end(), k)) return static_cast<int>(d);
  return std::nullopt;
}

std::uint64_t BfsTable::size() const {
  std::uint64_t n = 0;
  for (auto c : layer_counts) n += c;
  return n;
}

BfsTable bfs_enumerate(int max_depth, bool allow_deep) {
  if (max_depth < 0) throw std::invalid_argument("bfs_enumerate: negative depth");
  if (max_depth > kBfsDepthGuard && !allow_deep)
    throw MemoryGuardError("bfs_enumerate: depth " + std::to_string(max_depth) + " exceeds the guard of " +
                           std::to_string(kBfsDepthGuard) + " (set allow_deep to override)");

  BfsTable t;
  t.max_depth = max_depth;
  t.layers.push_back({pack(CubeState{})});
  t.layer_counts.push_back(1);

  for (int d = 0; d < max_depth; ++d) {
    const std::vector<StateKey>& frontier = t.layers.back();
    require_memory(frontier.size() * kMoveCount * sizeof(StateKey) * 2, "bfs_enumerate layer");
    std::vector<StateKey> next(frontier.size() * kMoveCount);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i) {
      const CubeState s = unpack(frontier[i]);
      for (int m = 0; m < kMoveCount; ++m)
        next[static_cast<std::size_t>(i) * kMoveCount + m] = pack(apply_move(s, Move::from_index(m)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());

    // Neighbours of layer d lie in layers d-1, d, d+1.
    std::vector<StateKey> fresh;
    std::set_difference(next.begin(), next.end(), frontier.begin(), frontier.end(), std::back_inserter(fresh));
    if (d > 0) {
      const std::vector<StateKey>& prev = t.layers[t.layers.size() - 2];
      std::vector<StateKey> tmp;
      std::set_difference(fresh.begin(), fresh.end(), prev.begin(), prev.end(), std::back_inserter(tmp));
      fresh.swap(tmp);
    }
    t.layer_counts.push_back(fresh.size());
    t.layers.push_back(std::move(fresh));
  }
  return t;
}

}  // namespace cubemix
