// Data-parallel inner loops. Each kernel has an OpenMP path and a serial
// path that produce bit-identical output (fixed partition, fixed summation
// order), plus, where useful, an independent naive reference used by tests
// and the benchmark.
#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubemix/coord.hpp"

namespace cubemix {

enum class Exec { Serial, Parallel };

inline constexpr std::uint8_t kUnvisited = 0xFF;

/// Breadth-first distance labelling of an implicit graph on [0, table.size())
/// where `next(i, m)` (m in 0..17) lists the neighbours of i. The generator set
/// is inverse closed, so neighbours and predecessors coincide. Returns the
/// number of vertices at each distance. Layers switch from forward expansion
/// to backward checking once the unvisited set is smaller than the frontier.
template <class Next>
std::vector<std::uint64_t> bfs_fill(std::span<std::uint8_t> table, std::uint32_t start, Next next, Exec exec) {
  const auto n = static_cast<std::int64_t>(table.size());
  for (auto& v : table) v = kUnvisited;
  table[start] = 0;
  std::vector<std::uint64_t> layers{1};
  std::uint64_t visited = 1;
  const bool par = exec == Exec::Parallel;

  for (int depth = 0; visited < table.size(); ++depth) {
    if (depth + 1 >= kUnvisited) throw std::logic_error("bfs_fill: depth exceeds byte range");
    const auto d = static_cast<std::uint8_t>(depth);
    const auto d1 = static_cast<std::uint8_t>(depth + 1);
    const bool backward = layers.back() > table.size() - visited;
    if (!backward) {
#pragma omp parallel for schedule(static, 4096) if (par)
      for (std::int64_t i = 0; i < n; ++i) {
        if (std::atomic_ref<std::uint8_t>(table[i]).load(std::memory_order_relaxed) != d) continue;
        for (int m = 0; m < kMoveCount; ++m) {
          std::atomic_ref<std::uint8_t> cell(table[next(static_cast<std::uint32_t>(i), m)]);
          if (cell.load(std::memory_order_relaxed) == kUnvisited) cell.store(d1, std::memory_order_relaxed);
        }
      }
    } else {
#pragma omp parallel for schedule(static, 4096) if (par)
      for (std::int64_t i = 0; i < n; ++i) {
        std::atomic_ref<std::uint8_t> self(table[i]);
        if (self.load(std::memory_order_relaxed) != kUnvisited) continue;
        for (int m = 0; m < kMoveCount; ++m) {
          if (std::atomic_ref<std::uint8_t>(table[next(static_cast<std::uint32_t>(i), m)])
                  .load(std::memory_order_relaxed) == d) {
            self.store(d1, std::memory_order_relaxed);
            break;
          }
        }
      }
    }
    std::uint64_t found = 0;
#pragma omp parallel for reduction(+ : found) schedule(static) if (par)
    for (std::int64_t i = 0; i < n; ++i) found += table[i] == d1;
    if (found == 0) throw std::logic_error("bfs_fill: graph is not connected");
    layers.push_back(found);
    visited += found;
  }
  return layers;
}

/// Textbook FIFO-queue BFS; the independent reference for bfs_fill.
template <class Next>
std::vector<std::uint64_t> bfs_fill_reference(std::span<std::uint8_t> table, std::uint32_t start, Next next) {
  for (auto& v : table) v = kUnvisited;
  std::vector<std::uint32_t> queue;
  queue.reserve(table.size());
  table[start] = 0;
  queue.push_back(start);
  std::vector<std::uint64_t> layers{1};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t i = queue[head];
    const std::uint8_t d = table[i];
    for (int m = 0; m < kMoveCount; ++m) {
      const std::uint32_t j = next(i, m);
      if (table[j] != kUnvisited) continue;
      table[j] = static_cast<std::uint8_t>(d + 1);
      if (layers.size() <= static_cast<std::size_t>(d + 1)) layers.push_back(0);
      ++layers[d + 1];
      queue.push_back(j);
    }
  }
  return layers;
}

/// One step of the corner-projected chain in gather form:
/// out[j] = (1/18) * sum over m of in[next(j, m)]. Preimages of j are its
/// images under the inverse moves, and the move set is inverse closed.
void evolve_corner_step(std::span<const double> in, std::span<double> out, const CornerMoveTables& tables,
                        Exec exec);

/// Same chain on an explicit transition table next[j * 18 + m].
void evolve_table_step(std::span<const double> in, std::span<double> out, std::span<const std::uint32_t> next,
                       Exec exec);

/// Scatter form, out[next(i, m)] += in[i] / 18; naive and independent of the gather kernels.
void evolve_corner_step_reference(std::span<const double> in, std::span<double> out,
                                  const CornerMoveTables& tables);

/// (1/2) * sum |p_i - 1/N| evaluated as sum over p_i > 1/N of (p_i - 1/N),
/// which is equal when p sums to one and is exact for sparse vectors.
/// Blocked partial sums make the result independent of thread count.
double tv_to_uniform(std::span<const double> p, Exec exec);

/// Law of labels[i] under p; out must have room for every label value.
void project_labels(std::span<const double> p, std::span<const std::uint8_t> labels, std::span<double> out,
                    Exec exec);

}  // namespace cubemix
