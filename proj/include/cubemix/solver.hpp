// Optimal solving in the 18-move metric: IDA* over pattern coordinates with
// the max-of-PDBs heuristic.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "cubemix/cube.hpp"
#include "cubemix/pdb.hpp"

namespace cubemix {

/// Searches whose threshold passes this depth need explicit opt-in.
inline constexpr int kUnattendedDepthLimit = 14;

struct SolveBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  bool allow_deep = false;
  /// Thresholds above this need allow_deep.
  int depth_limit = kUnattendedDepthLimit;
};

struct OptimalResult {
  int distance = 0;
  MoveSequence solution;
  std::uint64_t nodes_expanded = 0;
  double elapsed_seconds = 0.0;
};

/// Raised when the budget runs out. `lower_bound` is proven: every threshold
/// below it was searched exhaustively.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(int lower_bound, std::uint64_t nodes, const std::string& reason)
      : std::runtime_error("solver budget exhausted (" + reason + "); distance >= " + std::to_string(lower_bound)),
        lower_bound_(lower_bound),
        nodes_(nodes) {}
  int lower_bound() const { return lower_bound_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  int lower_bound_;
  std::uint64_t nodes_;
};

/// Successor rule: never the same face twice in a row, and of two opposite
/// faces in a row only the order U-D, F-B, L-R.
bool allowed_after(Face previous, Face next);

OptimalResult solve_optimal(const CubeState& state, const PdbSet& pdbs, const SolveBudget& budget = {});

/// Distance from x to target: solve_optimal on relative_state(x, target).
int distance(const CubeState& x, const CubeState& target, const PdbSet& pdbs, const SolveBudget& budget = {});

}  // namespace cubemix
