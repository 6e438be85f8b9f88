// Sharded, checkpointed generation of distance samples along the walk and at
// stationarity, plus decay-curve and histogram emission from the result.
//
// Layout of a dataset directory:
//   manifest.json          configuration and per-shard status (single writer)
//   shard_00000.csv ...    header "n,sample_index,d_o,d_s,d_c" (requested
//                          functionals only); n = -1 marks stationary rows;
//                          a distance of -1 marks a row whose solve ran out
//                          of budget.
// Each row depends only on (root_seed, n, sample_index), so output bytes do
// not depend on thread count or on how the run was interrupted.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubemix/cube.hpp"
#include "cubemix/solver.hpp"
#include "cubemix/stats.hpp"

namespace cubemix {

inline constexpr int kStationaryStep = -1;
inline constexpr int kSentinelDistance = -1;
inline constexpr int kDatasetFormatVersion = 1;

enum class Functional { Origin = 0, Superflip = 1, Checkerboard = 2 };
std::string to_string(Functional f);  // "d_o", "d_s", "d_c"
Functional functional_from_string(const std::string& s);
CubeState functional_target(Functional f);

enum class SampleMode { Full, Corner, Quotient };
std::string to_string(SampleMode m);
SampleMode sample_mode_from_string(const std::string& s);

/// "1..52,inf" style step lists; "inf" becomes kStationaryStep.
std::vector<int> parse_steps(const std::string& text);

class CorruptManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShardStatus {
  int id = 0;
  int step = 0;
  std::uint64_t first_index = 0;
  std::uint64_t count = 0;
  bool done = false;
  std::uint64_t rows = 0;
  std::uint64_t sentinel_rows = 0;
  std::string digest;  // SHA-256 of the shard file, hex
};

struct DatasetConfig {
  SampleMode mode = SampleMode::Full;
  std::uint64_t root_seed = 0;
  std::vector<int> steps;
  std::uint64_t samples_per_step = 1000;
  std::vector<Functional> functionals{Functional::Origin};
  std::uint64_t shard_size = 1000;
  SolveBudget budget;
};

struct DatasetManifest {
  int format_version = kDatasetFormatVersion;
  DatasetConfig config;
  std::vector<ShardStatus> shards;

  std::uint64_t rows_done() const;
  std::uint64_t sentinel_rows() const;
  std::size_t shards_done() const;
  bool complete() const { return shards_done() == shards.size(); }
};

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& text);

std::filesystem::path manifest_path(const std::filesystem::path& dir);
std::filesystem::path shard_path(const std::filesystem::path& dir, int shard_id);

/// Creates the directory and a manifest with every shard pending. Refuses to
/// overwrite an existing manifest.
DatasetManifest init_dataset(const std::filesystem::path& dir, const DatasetConfig& config);
DatasetManifest load_manifest(const std::filesystem::path& dir);
void save_manifest(const std::filesystem::path& dir, const DatasetManifest& m);

/// Recomputes the digest of every completed shard; throws CorruptManifestError on mismatch.
void verify_dataset(const std::filesystem::path& dir, const DatasetManifest& m);

std::string sha256_file(const std::filesystem::path& file);

/// Distances used for each mode: the optimal solver for Full, exact chain
/// tables for Corner and Quotient.
class DistanceContext {
 public:
  static DistanceContext for_mode(SampleMode mode, const std::filesystem::path& cache_dir);
  SampleMode mode() const { return mode_; }
  /// Distance from x to the functional's target; kSentinelDistance when the budget runs out.
  int measure(const CubeState& x, Functional f, const SolveBudget& budget) const;

 private:
  SampleMode mode_ = SampleMode::Full;
  std::shared_ptr<const PdbSet> pdbs_;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
};

/// The state behind row (n, sample_index).
CubeState sample_state(std::uint64_t root_seed, int n, std::uint64_t sample_index);

struct RunOptions {
  int threads = 0;  // 0: OpenMP default
  std::optional<std::size_t> max_shards;  // stop early, leaving the rest pending
  std::filesystem::path cache_dir;
};

struct RunSummary {
  std::size_t shards_completed = 0;
  std::size_t shards_pending = 0;
  std::uint64_t sentinel_rows = 0;
};

/// Verifies completed shards, then generates pending ones. Works the same for
/// a fresh run and a resume.
RunSummary run_dataset(const std::filesystem::path& dir, const RunOptions& options);

/// Distances of one functional grouped by step, sentinel rows dropped.
struct StepSamples {
  std::map<int, std::vector<int>> by_step;
  std::uint64_t dropped_sentinels = 0;
};
StepSamples load_samples(const std::filesystem::path& dir, Functional f);

/// Bootstrap TV of every non-stationary step against the stationary rows.
DecayCurve emit_decay(const StepSamples& samples, int resamples, std::uint64_t seed,
                      std::vector<TvEstimate>* estimates = nullptr);

struct Histogram {
  int n = 0;
  EmpiricalDistribution dist;
};
std::vector<Histogram> histograms(const StepSamples& samples, const std::vector<int>& steps);
/// Writes hist_<functional>_n<step>.csv (n = "inf" for stationary) with header distance,count,probability.
std::vector<std::filesystem::path> emit_histograms(const StepSamples& samples, Functional f,
                                                   const std::vector<int>& steps, const std::filesystem::path& out_dir);
void write_histogram_csv(std::ostream& out, const EmpiricalDistribution& d);

}  // namespace cubemix
