#include "cubemix/exact_chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cubemix/memory_guard.hpp"
#include "cubemix/pdb.hpp"

namespace cubemix {
namespace {

constexpr int kFixedCubie = 6;  // DBL
constexpr std::uint32_t kQuotientOriCount = 729;

std::vector<CornerConfig> generate_rotations() {
  const CornerConfig gens[3] = {
      compose(corner_config(generator_state(Move(Face::U, 1))), corner_config(generator_state(Move(Face::D, 3)))),
      compose(corner_config(generator_state(Move(Face::R, 1))), corner_config(generator_state(Move(Face::L, 3)))),
      compose(corner_config(generator_state(Move(Face::F, 1))), corner_config(generator_state(Move(Face::B, 3)))),
  };
  std::vector<CornerConfig> group{CornerConfig{}};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const CornerConfig& g : gens) {
      CornerConfig c = compose(group[i], g);
      if (std::find(group.begin(), group.end(), c) == group.end()) group.push_back(c);
    }
  }
  if (group.size() != 24) throw std::logic_error("rotation group does not have 24 elements");
  return group;
}

// Rotation indexed by (slot it pulls into DBL, twist it adds there).
const std::array<CornerConfig, 24>& rotation_by_fixed_slot() {
  static const std::array<CornerConfig, 24> table = [] {
    std::array<CornerConfig, 24> t{};
    std::array<bool, 24> seen{};
    for (const CornerConfig& r : corner_rotations()) {
      const int key = r.perm[kFixedCubie] * 3 + r.ori[kFixedCubie];
      if (seen[key]) throw std::logic_error("two rotations agree on the DBL slot");
      seen[key] = true;
      t[key] = r;
    }
    return t;
  }();
  return table;
}

ChainTables build_quotient_tables() {
  ChainTables t;
  t.mode = ChainMode::Quotient;
  t.size = kQuotientCount;
  t.quotient_next.resize(static_cast<std::size_t>(kQuotientCount) * kMoveCount);
  std::array<CornerConfig, kMoveCount> gens;
  for (Move m : all_moves()) gens[m.index()] = corner_config(generator_state(m));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(kQuotientCount); ++i) {
    const CornerConfig rep = quotient_decode(static_cast<std::uint32_t>(i));
    for (int m = 0; m < kMoveCount; ++m)
      t.quotient_next[static_cast<std::size_t>(i) * kMoveCount + m] = quotient_index(compose(rep, gens[m]));
  }
  return t;
}

ChainTables corner_chain_tables() {
  ChainTables t;
  t.mode = ChainMode::Corner;
  t.size = kCornerCoordCount;
  corner_move_tables();
  return t;
}

PdbKind pdb_kind(ChainMode mode) { return mode == ChainMode::Corner ? PdbKind::Corners : PdbKind::QuotientCorners; }

}  // namespace

std::string to_string(ChainMode mode) { return mode == ChainMode::Corner ? "corner" : "quotient"; }

ChainMode chain_mode_from_string(const std::string& s) {
  if (s == "corner") return ChainMode::Corner;
  if (s == "quotient") return ChainMode::Quotient;
  throw std::invalid_argument("unknown chain mode '" + s + "'");
}

const std::vector<CornerConfig>& corner_rotations() {
  static const std::vector<CornerConfig> group = generate_rotations();
  return group;
}

CornerConfig canonical_quotient_rep(const CornerConfig& c) {
  int slot = 0;
  while (c.perm[slot] != kFixedCubie) ++slot;
  const int need = (3 - c.ori[slot]) % 3;
  return compose(c, rotation_by_fixed_slot()[slot * 3 + need]);
}

std::uint32_t quotient_index(const CornerConfig& c) {
  const CornerConfig rep = canonical_quotient_rep(c);
  std::array<std::uint8_t, 7> perm{};
  for (int s = 0, k = 0; s < kCornerCount; ++s) {
    if (s == kFixedCubie) continue;
    const int cubie = rep.perm[s];
    perm[k++] = static_cast<std::uint8_t>(cubie > kFixedCubie ? cubie - 1 : cubie);
  }
  std::uint32_t ori = 0;
  for (int s = 0; s < 6; ++s) ori = ori * 3 + rep.ori[s];
  return permutation_rank(perm) * kQuotientOriCount + ori;
}

CornerConfig quotient_decode(std::uint32_t index) {
  if (index >= kQuotientCount) throw std::out_of_range("quotient index out of range");
  const auto perm = permutation_unrank<7>(index / kQuotientOriCount);
  std::uint32_t ori = index % kQuotientOriCount;
  CornerConfig c;
  for (int s = 0, k = 0; s < kCornerCount; ++s) {
    if (s == kFixedCubie) {
      c.perm[s] = kFixedCubie;
      continue;
    }
    const int v = perm[k++];
    c.perm[s] = static_cast<std::uint8_t>(v >= kFixedCubie ? v + 1 : v);
  }
  int twist = 0;
  for (int s = 5; s >= 0; --s) {
    c.ori[s] = static_cast<std::uint8_t>(ori % 3);
    twist += c.ori[s];
    ori /= 3;
  }
  c.ori[kFixedCubie] = 0;
  c.ori[7] = static_cast<std::uint8_t>((3 - twist % 3) % 3);
  return c;
}

const ChainTables& chain_tables(ChainMode mode) {
  if (mode == ChainMode::Corner) {
    static const ChainTables corner = corner_chain_tables();
    return corner;
  }
  static const ChainTables quotient = build_quotient_tables();
  return quotient;
}

std::uint32_t chain_index(ChainMode mode, const CornerConfig& c) {
  return mode == ChainMode::Corner ? corner_coordinate(c).flat() : quotient_index(c);
}

std::uint32_t chain_next(const ChainTables& t, std::uint32_t i, int m) {
  if (t.mode == ChainMode::Corner) return corner_move_tables().next_flat(i, m);
  return t.quotient_next[static_cast<std::size_t>(i) * kMoveCount + m];
}

DistanceTable chain_bfs(ChainMode mode, Exec exec) {
  DistanceTable t;
  t.mode = mode;
  const ChainTables& tables = chain_tables(mode);
  t.distances.resize(tables.size);
  if (mode == ChainMode::Corner) {
    const CornerMoveTables& ct = corner_move_tables();
    t.layer_counts = bfs_fill(t.distances, 0, [&ct](std::uint32_t i, int m) { return ct.next_flat(i, m); }, exec);
  } else {
    const std::uint32_t* next = tables.quotient_next.data();
    t.layer_counts = bfs_fill(
        t.distances, quotient_index(CornerConfig{}),
        [next](std::uint32_t i, int m) { return next[static_cast<std::size_t>(i) * kMoveCount + m]; }, exec);
  }
  t.diameter = static_cast<int>(t.layer_counts.size()) - 1;
  return t;
}

DistanceTable corner_bfs(Exec exec) { return chain_bfs(ChainMode::Corner, exec); }

void save_distance_table(const DistanceTable& t, const std::filesystem::path& file) {
  PatternDatabase pdb;
  pdb.kind = pdb_kind(t.mode);
  pdb.table = t.distances;
  save_pdb(pdb, file);
}

DistanceTable load_or_build_distance_table(ChainMode mode, const std::filesystem::path& dir) {
  const auto file = pdb_path(dir, pdb_kind(mode));
  DistanceTable t;
  t.mode = mode;
  if (std::filesystem::exists(file)) {
    PatternDatabase pdb = load_pdb(file, pdb_kind(mode));
    t.distances = std::move(pdb.table);
    t.layer_counts = std::move(pdb.layer_counts);
    t.diameter = static_cast<int>(t.layer_counts.size()) - 1;
    return t;
  }
  t = chain_bfs(mode);
  save_distance_table(t, file);
  return t;
}

std::vector<std::uint8_t> relative_labels(const DistanceTable& t, const CornerConfig& target) {
  const ChainMode mode = t.mode;
  const std::uint32_t size = chain_tables(mode).size;
  CornerConfig inv;
  for (int s = 0; s < kCornerCount; ++s) {
    inv.perm[target.perm[s]] = static_cast<std::uint8_t>(s);
    inv.ori[target.perm[s]] = static_cast<std::uint8_t>((3 - target.ori[s]) % 3);
  }
  std::vector<std::uint8_t> out(size);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(size); ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    const CornerConfig x = mode == ChainMode::Corner ? decode(CornerCoordinate::from_flat(idx)) : quotient_decode(idx);
    out[i] = t.distances[chain_index(mode, compose(inv, x))];
  }
  return out;
}

DistributionVector DistributionVector::point_mass(std::uint32_t size, std::uint32_t index) {
  DistributionVector d;
  d.probabilities.assign(size, 0.0);
  d.probabilities.at(index) = 1.0;
  return d;
}

DistributionVector DistributionVector::uniform(std::uint32_t size) {
  DistributionVector d;
  d.probabilities.assign(size, 1.0 / static_cast<double>(size));
  return d;
}

void evolve_step_into(const DistributionVector& in, DistributionVector& out, const ChainTables& tables, Exec exec) {
  out.probabilities.resize(in.probabilities.size());
  if (tables.mode == ChainMode::Corner)
    evolve_corner_step(in.probabilities, out.probabilities, corner_move_tables(), exec);
  else
    evolve_table_step(in.probabilities, out.probabilities, tables.quotient_next, exec);
  out.step_index = in.step_index + 1;
}

DistributionVector evolve_step(const DistributionVector& dist, const ChainTables& tables, Exec exec) {
  DistributionVector out;
  evolve_step_into(dist, out, tables, exec);
  return out;
}

double exact_tv_uniform(const DistributionVector& dist, Exec exec) { return tv_to_uniform(dist.probabilities, exec); }

std::vector<double> project_distribution(const DistributionVector& dist, std::span<const std::uint8_t> labels,
                                         std::size_t support) {
  std::vector<double> out(support, 0.0);
  project_labels(dist.probabilities, labels, out, Exec::Parallel);
  return out;
}

std::vector<double> project_uniform(std::span<const std::uint8_t> labels, std::size_t support) {
  std::vector<std::uint64_t> counts(support, 0);
  for (auto v : labels) {
    if (v >= support) throw std::out_of_range("label exceeds projection support");
    ++counts[v];
  }
  std::vector<double> out(support);
  for (std::size_t k = 0; k < support; ++k)
    out[k] = static_cast<double>(counts[k]) / static_cast<double>(labels.size());
  return out;
}

double tv_between(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_between: support sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > q[i]) s += p[i] - q[i];
  return s;
}

ExactDecay exact_decay(ChainMode mode, int max_n, const DistanceTable& distances, Exec exec) {
  if (max_n < 0) throw std::invalid_argument("exact_decay: negative step count");
  const ChainTables& tables = chain_tables(mode);
  DenseEvolutionLease lease(2ULL * tables.size * sizeof(double));
  if (distances.mode != mode || distances.distances.size() != tables.size)
    throw std::invalid_argument("exact_decay: distance table does not match the chain");

  ExactDecay out;
  out.mode = mode;
  out.diameter = distances.diameter;
  const std::size_t support = static_cast<std::size_t>(distances.diameter) + 1;
  out.stationary_law = project_uniform(distances.distances, support);

  DistributionVector cur = DistributionVector::point_mass(tables.size, chain_index(mode, CornerConfig{}));
  DistributionVector next;
  next.probabilities.assign(tables.size, 0.0);
  for (int n = 0;; ++n) {
    out.tv_full.push_back(exact_tv_uniform(cur, exec));
    out.projected_laws.push_back(project_distribution(cur, distances.distances, support));
    out.tv_projected.push_back(tv_between(out.projected_laws.back(), out.stationary_law));
    if (n == max_n) break;
    evolve_step_into(cur, next, tables, exec);
    std::swap(cur, next);
  }
  return out;
}

}  // namespace cubemix
