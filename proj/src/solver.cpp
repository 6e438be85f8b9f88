#include "cubemix/solver.hpp"

#include <chrono>
#include <limits>
#include <vector>

#include "cubemix/coord.hpp"

namespace cubemix {
namespace {

using Clock = std::chrono::steady_clock;

constexpr int kNoFace = -1;
constexpr int kNotFound = std::numeric_limits<int>::max();

// Faces that may not follow face f (same face, or the larger of an opposite pair).
constexpr std::uint8_t kBlockedAfter[kFaceCount] = {
    // U: U               R: R, L         F: F
    0b000001, 0b010010, 0b000100,
    // D: D, U            L: L            B: B, F
    0b001001, 0b010000, 0b100100,
};

class Search {
 public:
  Search(const PdbSet& pdbs, const SolveBudget& budget, PatternCoords goal)
      : pdbs_(pdbs), corner_(corner_move_tables()), edges_(edge_move_tables()), budget_(budget), goal_(goal),
        start_(Clock::now()) {}

  // Returns kNotFound-free minimum f that exceeded the threshold, or -1 on success.
  int dfs(const PatternCoords& c, int g, int threshold, int last_face) {
    const int h = pdbs_.heuristic(c);
    const int f = g + h;
    if (f > threshold) return f;
    if (h == 0 && c == goal_) return -1;
    ++nodes_;
    if ((nodes_ & 0xFFFF) == 0) check_budget(threshold);

    int best = kNotFound;
    for (int face = 0; face < kFaceCount; ++face) {
      if (last_face != kNoFace && (kBlockedAfter[last_face] >> face & 1)) continue;
      for (int amount = 0; amount < 3; ++amount) {
        const int m = face * 3 + amount;
        const PatternCoords child{corner_.next_flat(c.corner, m), edges_.next_flat(c.edges_a, m),
                                  edges_.next_flat(c.edges_b, m)};
        path_.push_back(m);
        const int r = dfs(child, g + 1, threshold, face);
        if (r < 0) return -1;
        path_.pop_back();
        if (r < best) best = r;
      }
    }
    return best;
  }

  void check_budget(int threshold) const {
    if (budget_.max_nodes && nodes_ >= *budget_.max_nodes)
      throw BudgetExhausted(threshold, nodes_, "node cap");
    if (budget_.max_seconds && elapsed() >= *budget_.max_seconds)
      throw BudgetExhausted(threshold, nodes_, "time cap");
  }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<int>& path() const { return path_; }

 private:
  const PdbSet& pdbs_;
  const CornerMoveTables& corner_;
  const EdgeMoveTables& edges_;
  const SolveBudget& budget_;
  PatternCoords goal_;
  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  std::vector<int> path_;
};

}  // namespace

bool allowed_after(Face previous, Face next) {
  return !(kBlockedAfter[static_cast<int>(previous)] >> static_cast<int>(next) & 1);
}

OptimalResult solve_optimal(const CubeState& state, const PdbSet& pdbs, const SolveBudget& budget) {
  if (!is_valid(state)) throw std::invalid_argument("solve_optimal: state is not in the cube group");
  const PatternCoords goal = pattern_coords(CubeState{});
  const PatternCoords root = pattern_coords(state);
  Search search(pdbs, budget, goal);

  int threshold = pdbs.heuristic(root);
  while (true) {
    if (threshold > budget.depth_limit && !budget.allow_deep)
      throw BudgetExhausted(threshold, search.nodes(),
                            "depth above " + std::to_string(budget.depth_limit) + " needs allow_deep");
    const int r = search.dfs(root, 0, threshold, kNoFace);
    if (r < 0) break;
    if (r == kNotFound) throw std::logic_error("solve_optimal: search space exhausted without a solution");
    threshold = r;
    search.check_budget(threshold);
  }

  OptimalResult result;
  result.distance = static_cast<int>(search.path().size());
  for (int m : search.path()) result.solution.push_back(Move::from_index(m));
  result.nodes_expanded = search.nodes();
  result.elapsed_seconds = search.elapsed();
  return result;
}

int distance(const CubeState& x, const CubeState& target, const PdbSet& pdbs, const SolveBudget& budget) {
  return solve_optimal(relative_state(x, target), pdbs, budget).distance;
}

}  // namespace cubemix
