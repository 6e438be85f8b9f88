// The corner projection of the scrambling chain, evolved exactly.
//
// Two chain variants:
//   Corner   - all 8! * 3^7 = 88,179,840 corner configurations, centers fixed.
//   Quotient - corner configurations modulo whole-cube rotations (the
//              free-standing 2x2x2 puzzle), 7! * 3^6 = 3,674,160 classes.
//              Representative: the DBL cubie home and untwisted.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cubemix/coord.hpp"
#include "cubemix/kernels.hpp"

namespace cubemix {

enum class ChainMode { Corner, Quotient };
std::string to_string(ChainMode mode);
ChainMode chain_mode_from_string(const std::string& s);

inline constexpr std::uint32_t kQuotientCount = 3674160;

/// The 24 whole-cube rotations acting on corner configurations by right
/// multiplication, generated from the corner parts of U1 D3, R1 L3, F1 B3.
const std::vector<CornerConfig>& corner_rotations();

/// The unique rotation of `c` that puts the DBL cubie home untwisted.
CornerConfig canonical_quotient_rep(const CornerConfig& c);
std::uint32_t quotient_index(const CornerConfig& c);  // canonicalizes first
CornerConfig quotient_decode(std::uint32_t index);

/// next[i * 18 + m] for the chosen chain.
struct ChainTables {
  ChainMode mode = ChainMode::Corner;
  std::uint32_t size = 0;
  std::vector<std::uint32_t> quotient_next;  // Quotient only
};

const ChainTables& chain_tables(ChainMode mode);
std::uint32_t chain_index(ChainMode mode, const CornerConfig& c);
std::uint32_t chain_next(const ChainTables& t, std::uint32_t i, int m);

struct DistanceTable {
  ChainMode mode = ChainMode::Corner;
  std::vector<std::uint8_t> distances;
  std::vector<std::uint64_t> layer_counts;
  int diameter = 0;
};

/// Distance from the origin for every chain state.
DistanceTable chain_bfs(ChainMode mode, Exec exec = Exec::Parallel);
DistanceTable corner_bfs(Exec exec = Exec::Parallel);
/// Cached under `dir` with the pattern-database header.
DistanceTable load_or_build_distance_table(ChainMode mode, const std::filesystem::path& dir);
void save_distance_table(const DistanceTable& t, const std::filesystem::path& file);

/// Distance to `target` for every chain state: d(target^-1 * x).
std::vector<std::uint8_t> relative_labels(const DistanceTable& t, const CornerConfig& target);

struct DistributionVector {
  std::vector<double> probabilities;
  int step_index = 0;

  static DistributionVector point_mass(std::uint32_t size, std::uint32_t index);
  static DistributionVector uniform(std::uint32_t size);
};

DistributionVector evolve_step(const DistributionVector& dist, const ChainTables& tables, Exec exec = Exec::Parallel);
/// In-place variant reusing `scratch`, for long evolutions.
void evolve_step_into(const DistributionVector& in, DistributionVector& out, const ChainTables& tables,
                      Exec exec = Exec::Parallel);

double exact_tv_uniform(const DistributionVector& dist, Exec exec = Exec::Parallel);

/// Law of labels under dist, over label values 0..support-1.
std::vector<double> project_distribution(const DistributionVector& dist, std::span<const std::uint8_t> labels,
                                         std::size_t support);
/// Law of labels under the uniform distribution (layer counts / size).
std::vector<double> project_uniform(std::span<const std::uint8_t> labels, std::size_t support);

double tv_between(std::span<const double> p, std::span<const double> q);

struct ExactDecay {
  ChainMode mode = ChainMode::Corner;
  std::vector<double> tv_full;       // TV(X_n, uniform), n = 0..max_n
  std::vector<double> tv_projected;  // TV(d(X_n), d(X_inf))
  std::vector<std::vector<double>> projected_laws;
  std::vector<double> stationary_law;
  int diameter = 0;
};

/// Evolves from the origin for n = 0..max_n. Refuses with MemoryGuardError when
/// the two dense vectors do not fit or another evolution is running.
ExactDecay exact_decay(ChainMode mode, int max_n, const DistanceTable& distances, Exec exec = Exec::Parallel);

}  // namespace cubemix
