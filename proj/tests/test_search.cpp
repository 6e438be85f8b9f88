#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"

#include "cubemix/bfs.hpp"
#include "cubemix/coord.hpp"
#include "cubemix/memory_guard.hpp"
#include "cubemix/pdb.hpp"
#include "cubemix/solver.hpp"
#include "cubemix/walk.hpp"

using namespace cubemix;
namespace fs = std::filesystem;

namespace {

const PdbSet& pdbs() {
  static const PdbSet set = load_or_build_pdbs(default_cache_dir());
  return set;
}

const BfsTable& ball5() {
  static const BfsTable t = bfs_enumerate(5);
  return t;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cubemix_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("permutation ranks are a bijection") {
  for (std::uint32_t r = 0; r < 40320; ++r) REQUIRE(permutation_rank(permutation_unrank<8>(r)) == r);
  CHECK(permutation_rank(std::array<std::uint8_t, 8>{0, 1, 2, 3, 4, 5, 6, 7}) == 0);
  for (std::uint32_t r = 0; r < 2187; ++r) REQUIRE(corner_ori_rank(corner_ori_unrank(r)) == r);
  for (std::uint32_t r = 0; r < 665280; r += 7) REQUIRE(edge_position_rank(edge_position_unrank(r)) == r);
}

TEST_CASE("corner coordinates round trip and follow the cubie engine") {
  const CornerMoveTables& t = corner_move_tables();
  RngStream rng(12, 0);
  for (int i = 0; i < 3000; ++i) {
    const CubeState x = uniform_state(rng);
    const CornerCoordinate c = corner_coordinate(x);
    CHECK(decode(c) == corner_config(x));
    CHECK(CornerCoordinate::from_flat(c.flat()) == c);
    const Move m = random_move(rng);
    CHECK(t.next_flat(c.flat(), m.index()) == corner_coordinate(apply_move(x, m)).flat());
    CHECK(apply_move(corner_config(x), m) == corner_config(apply_move(x, m)));
  }
}

TEST_CASE("edge pattern tables follow the cubie engine") {
  const EdgeMoveTables& t = edge_move_tables();
  RngStream rng(13, 0);
  for (int i = 0; i < 3000; ++i) {
    const CubeState x = uniform_state(rng);
    const Move m = random_move(rng);
    for (EdgeSet set : {EdgeSet::A, EdgeSet::B})
      CHECK(t.next_flat(edge_pattern(x, set).flat(), m.index()) == edge_pattern(apply_move(x, m), set).flat());
  }
  CHECK(edge_pattern(CubeState{}, EdgeSet::A).flat() != edge_pattern(named_state(NamedState::Superflip), EdgeSet::A).flat());
}

TEST_CASE("cubie ball matches the facelet-model BFS and the known counts") {
  const auto facelet = oracle::facelet_bfs_layers(5);
  REQUIRE(ball5().layer_counts.size() == 6);
  for (int d = 0; d <= 5; ++d) {
    CHECK(ball5().layer_counts[d] == facelet[d]);
    CHECK(ball5().layer_counts[d] == oracle::kKnownLayers[d]);
  }
  CHECK(ball5().distance(CubeState{}) == 0);
  CHECK(ball5().distance(named_state(NamedState::Checkerboard)) == std::nullopt);
  CHECK_THROWS_AS(bfs_enumerate(7), MemoryGuardError);
}

TEST_CASE("bfs_fill agrees across execution modes and with the FIFO reference") {
  const CornerMoveTables& t = corner_move_tables();
  auto next_perm = [&](std::uint32_t i, int m) { return t.next_perm(i, m); };
  std::vector<std::uint8_t> a(40320), b(40320), c(40320);
  const auto la = bfs_fill(std::span<std::uint8_t>(a), 0, next_perm, Exec::Serial);
  const auto lb = bfs_fill(std::span<std::uint8_t>(b), 0, next_perm, Exec::Parallel);
  const auto lc = bfs_fill_reference(std::span<std::uint8_t>(c), 0, next_perm);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(la == lc);
  CHECK(lb == lc);
}

TEST_CASE("corner pattern database matches the reference BFS") {
  const PatternDatabase& corners = pdbs().corners;
  CHECK(corners.size() == 88179840);
  const std::vector<std::uint64_t> published = {1, 18, 243, 2874, 28000, 205416, 1168516, 5402628, 20776176, 45391616, 15139616, 64736};
  CHECK(corners.layer_counts == published);

  const CornerMoveTables& t = corner_move_tables();
  std::vector<std::uint8_t> ref(corners.size());
  bfs_fill_reference(std::span<std::uint8_t>(ref), 0, [&](std::uint32_t i, int m) { return t.next_flat(i, m); });
  CHECK(ref == corners.table);
}

TEST_CASE("edge pattern databases") {
  CHECK(pdbs().edges_a.size() == 42577920);
  CHECK(pdbs().edges_b.size() == 42577920);
  CHECK(pdbs().edges_a[edge_pattern(CubeState{}, EdgeSet::A).flat()] == 0);
  CHECK(pdbs().edges_b[edge_pattern(CubeState{}, EdgeSet::B).flat()] == 0);
  for (const PatternDatabase* p : {&pdbs().edges_a, &pdbs().edges_b}) {
    std::uint64_t total = 0;
    for (auto c : p->layer_counts) total += c;
    CHECK(total == p->size());
  }
  // The two sets are not related by a symmetry, so check one against the FIFO reference.
  const EdgeMoveTables& t = edge_move_tables();
  std::vector<std::uint8_t> ref(pdbs().edges_b.size());
  const auto layers = bfs_fill_reference(std::span<std::uint8_t>(ref), edge_pattern(CubeState{}, EdgeSet::B).flat(),
                                         [&](std::uint32_t i, int m) { return t.next_flat(i, m); });
  CHECK(ref == pdbs().edges_b.table);
  CHECK(layers == pdbs().edges_b.layer_counts);
}

TEST_CASE("heuristic is admissible on the exact ball") {
  for (int d = 0; d <= 5; ++d)
    for (std::size_t i = 0; i < ball5().layers[d].size(); i += 97)
      REQUIRE(pdbs().heuristic(unpack(ball5().layers[d][i])) <= d);
}

TEST_CASE("solver matches BFS distances") {
  RngStream rng(14, 0);
  for (int i = 0; i < 200; ++i) {
    const int len = static_cast<int>(rng.uniform_below(6));
    const CubeState x = walk(CubeState{}, len, rng);
    const OptimalResult r = solve_optimal(x, pdbs());
    CHECK(r.distance == *ball5().distance(x));
    CHECK(static_cast<int>(r.solution.size()) == r.distance);
    CHECK(apply_sequence(x, r.solution) == CubeState{});
  }
}

TEST_CASE("solver on named states and budgets") {
  const OptimalResult cb = solve_optimal(named_state(NamedState::Checkerboard), pdbs());
  CHECK(cb.distance == 6);
  CHECK(distance(named_state(NamedState::Checkerboard), named_state(NamedState::Checkerboard), pdbs()) == 0);
  CHECK(distance(CubeState{}, named_state(NamedState::Checkerboard), pdbs()) == 6);

  const std::pair<Face, Face> ordered[] = {{Face::U, Face::D}, {Face::F, Face::B}, {Face::L, Face::R}};
  for (const auto& [first, second] : ordered) {
    CHECK(allowed_after(first, second));
    CHECK_FALSE(allowed_after(second, first));
    CHECK_FALSE(allowed_after(first, first));
    CHECK_FALSE(allowed_after(second, second));
  }
  CHECK(allowed_after(Face::R, Face::U));
  CHECK(allowed_after(Face::U, Face::R));

  SolveBudget tiny;
  tiny.max_nodes = 1;
  RngStream rng(15, 0);
  const CubeState deep = uniform_state(rng);
  try {
    solve_optimal(deep, pdbs(), tiny);
    FAIL("expected the node budget to run out");
  } catch (const BudgetExhausted& e) {
    CHECK(e.lower_bound() >= pdbs().heuristic(deep));
  }
  SolveBudget shallow;
  shallow.depth_limit = 3;
  const CubeState five = apply_sequence(CubeState{}, parse_moves("R U F D L"));
  try {
    solve_optimal(five, pdbs(), shallow);
    FAIL("expected the depth gate to refuse");
  } catch (const BudgetExhausted& e) {
    CHECK(e.lower_bound() > 3);
  }
  shallow.allow_deep = true;
  CHECK(solve_optimal(five, pdbs(), shallow).distance == 5);
  CHECK(SolveBudget{}.depth_limit == kUnattendedDepthLimit);
  CubeState bad;
  bad.corner_ori[0] = 1;
  CHECK_THROWS_AS(solve_optimal(bad, pdbs()), std::invalid_argument);
}

TEST_CASE("pattern database files") {
  const fs::path dir = scratch_dir("pdb");
  CHECK_THROWS_AS(load_pdbs(dir), MissingPdbError);

  const PatternDatabase& a = pdbs().edges_a;
  save_pdb(a, pdb_path(dir, PdbKind::EdgesA));
  const PatternDatabase back = load_pdb(pdb_path(dir, PdbKind::EdgesA), PdbKind::EdgesA);
  CHECK(back.table == a.table);
  CHECK(back.layer_counts == a.layer_counts);
  CHECK_THROWS_AS(load_pdb(pdb_path(dir, PdbKind::EdgesA), PdbKind::EdgesB), PdbFormatError);

  {
    std::fstream f(pdb_path(dir, PdbKind::EdgesA), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.put('X');
  }
  CHECK_THROWS_AS(load_pdb(pdb_path(dir, PdbKind::EdgesA), PdbKind::EdgesA), PdbFormatError);

  fs::resize_file(pdb_path(dir, PdbKind::EdgesA), 100);
  CHECK_THROWS_AS(load_pdb(pdb_path(dir, PdbKind::EdgesA), PdbKind::EdgesA), PdbFormatError);
  fs::remove_all(dir);
}
