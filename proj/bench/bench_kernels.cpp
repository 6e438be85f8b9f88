// Serial vs OpenMP kernels, plus the naive references they are tested against.
#include <benchmark/benchmark.h>

#include "cubemix/exact_chain.hpp"
#include "cubemix/kernels.hpp"
#include "cubemix/pdb.hpp"
#include "cubemix/stats.hpp"

using namespace cubemix;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_CornerEvolve(benchmark::State& state) {
  const CornerMoveTables& t = corner_move_tables();
  std::vector<double> in(88179840, 1.0 / 88179840), out(in.size());
  for (auto _ : state) {
    evolve_corner_step(in, out, t, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_CornerEvolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_CornerEvolveScatterReference(benchmark::State& state) {
  const CornerMoveTables& t = corner_move_tables();
  std::vector<double> in(88179840, 1.0 / 88179840), out(in.size());
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), 0.0);
    evolve_corner_step_reference(in, out, t);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_CornerEvolveScatterReference)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_QuotientEvolve(benchmark::State& state) {
  const ChainTables& t = chain_tables(ChainMode::Quotient);
  std::vector<double> in(t.size, 1.0 / t.size), out(t.size);
  for (auto _ : state) {
    evolve_table_step(in, out, t.quotient_next, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_QuotientEvolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TvToUniform(benchmark::State& state) {
  std::vector<double> p(88179840, 1.0 / 88179840);
  p[0] += 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(tv_to_uniform(p, exec_of(state)));
}
BENCHMARK(BM_TvToUniform)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EdgeBfs(benchmark::State& state) {
  const EdgeMoveTables& t = edge_move_tables();
  std::vector<std::uint8_t> table(pdb_entry_count(PdbKind::EdgesA));
  auto next = [&](std::uint32_t i, int m) { return t.next_flat(i, m); };
  for (auto _ : state) {
    if (state.range(0) == 2)
      bfs_fill_reference(std::span<std::uint8_t>(table), 0, next);
    else
      bfs_fill(std::span<std::uint8_t>(table), 0, next, exec_of(state));
    benchmark::DoNotOptimize(table.data());
  }
}
// 0 serial, 1 OpenMP, 2 FIFO reference
BENCHMARK(BM_EdgeBfs)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_Bootstrap(benchmark::State& state) {
  std::vector<int> a, b;
  RngStream g(1, 1);
  for (int i = 0; i < 100000; ++i) {
    a.push_back(static_cast<int>(g.uniform_below(21)));
    b.push_back(static_cast<int>(g.uniform_below(19)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_tv(a, b, 200, RngStream(2, 2), exec_of(state)));
}
BENCHMARK(BM_Bootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
