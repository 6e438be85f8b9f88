#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cubemix/bfs.hpp"
#include "cubemix/dataset.hpp"
#include "cubemix/exact_chain.hpp"
#include "cubemix/facelet.hpp"
#include "cubemix/memory_guard.hpp"
#include "cubemix/walk.hpp"

using namespace cubemix;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kMemory = 4, kCorrupt = 5, kMissingPdb = 6 };

constexpr int kReferenceCornerMixingTime = 19;

struct Common {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> stream;
  int threads = 0;
  std::string pdb_dir;
  std::optional<std::uint64_t> budget_nodes;
  std::optional<double> budget_seconds;
  bool allow_deep = false;
  std::string out;
  std::string functional = "d_o";
  std::string mode = "full";
  int resamples = 1000;

  fs::path cache() const { return pdb_dir.empty() ? default_cache_dir() : fs::path(pdb_dir); }
  SolveBudget budget() const { return {budget_nodes, budget_seconds, allow_deep}; }
};

void add_budget(CLI::App* app, Common& c) {
  app->add_option("--budget-nodes", c.budget_nodes, "Node budget per solve");
  app->add_option("--budget-seconds", c.budget_seconds, "Time budget per solve");
  app->add_flag("--allow-deep", c.allow_deep, "Permit searches deeper than 14 moves");
  app->add_option("--pdb-dir", c.pdb_dir, "Pattern database directory");
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

CubeState read_state(const std::string& text, const std::string& moves) {
  if (!moves.empty()) return apply_sequence(CubeState{}, parse_moves(moves));
  if (text == "origin" || text == "superflip" || text == "checkerboard") return named_state(text);
  return parse_state(text);
}

std::vector<int> read_sample_column(const std::string& path, Functional f, std::uint64_t& sentinels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> head;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) head.push_back(cell);
  }
  const auto it = std::find(head.begin(), head.end(), to_string(f));
  if (it == head.end()) throw std::invalid_argument(path + " has no column " + to_string(f));
  const auto col = static_cast<std::size_t>(it - head.begin());
  std::vector<int> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    for (std::size_t i = 0; i <= col; ++i) std::getline(ls, cell, ',');
    const int d = std::stoi(cell);
    if (d == kSentinelDistance)
      ++sentinels;
    else
      out.push_back(d);
  }
  return out;
}

void print_layers(const std::vector<std::uint64_t>& layers) {
  std::uint64_t total = 0;
  for (std::size_t d = 0; d < layers.size(); ++d) {
    std::printf("%zu %llu\n", d, static_cast<unsigned long long>(layers[d]));
    total += layers[d];
  }
  std::printf("total %llu diameter %zu\n", static_cast<unsigned long long>(total), layers.size() - 1);
}

void sample_rows(const Common& c, int n, std::uint64_t samples) {
  const Functional f = functional_from_string(c.functional);
  const DistanceContext ctx = DistanceContext::for_mode(sample_mode_from_string(c.mode), c.cache());
  std::vector<int> d(samples);
  const SolveBudget budget = c.budget();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint64_t i = 0; i < samples; ++i) d[i] = ctx.measure(sample_state(c.seed, n, i), f, budget);
  Output out(c.out);
  out.stream() << "n,sample_index," << to_string(f) << '\n';
  for (std::uint64_t i = 0; i < samples; ++i) out.stream() << n << ',' << i << ',' << d[i] << '\n';
}

void report_thresholds(const std::string& label, const DecayCurve& curve) {
  for (const ThresholdRow& r : threshold_report(curve)) {
    std::printf("%s epsilon=%s first_n=%s", label.c_str(), format_number(r.epsilon).c_str(),
                r.n ? std::to_string(*r.n).c_str() : "none");
    if (r.epsilon == 0.25) std::printf(" (reference mixing time %d)", kReferenceCornerMixingTime);
    std::printf("\n");
  }
}

DecayCurve exact_curve(const std::vector<double>& tv) {
  DecayCurve c;
  for (std::size_t n = 0; n < tv.size(); ++n) c.points.push_back({static_cast<int>(n), tv[n], std::nullopt});
  return c;
}

void write_curve(const fs::path& file, const DecayCurve& curve) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_decay_csv(out, curve);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scrambling-chain mixing experiments on the 3x3x3 cube"};
  app.require_subcommand(1);
  Common c;

  auto* scramble = app.add_subcommand("scramble", "Random move word and resulting state");
  int scramble_n = 25;
  scramble->add_option("--n", scramble_n, "Word length")->check(CLI::NonNegativeNumber);
  scramble->add_option("--seed", c.seed);
  scramble->add_option("--stream", c.stream, "Stream id (default: derived from --n)");

  auto* solve = app.add_subcommand("solve", "Optimal solution in the 18-move metric");
  std::string state_text, moves_text, target_text = "origin";
  solve->add_option("state", state_text, "54-character facelet string or origin|superflip|checkerboard");
  solve->add_option("--moves", moves_text, "Build the state from a move sequence instead");
  solve->add_option("--target", target_text, "origin|superflip|checkerboard");
  add_budget(solve, c);

  std::uint64_t samples = 1000;
  int walk_n = 0;
  auto* walk_sample = app.add_subcommand("walk-sample", "Distances of X_n for seeded walks from the origin");
  walk_sample->add_option("--n", walk_n, "Walk length")->required()->check(CLI::NonNegativeNumber);
  auto* stationary_sample = app.add_subcommand("stationary-sample", "Distances of uniform states");
  for (auto* sub : {walk_sample, stationary_sample}) {
    sub->add_option("--samples", samples);
    sub->add_option("--seed", c.seed);
    sub->add_option("--functional", c.functional, "d_o|d_s|d_c");
    sub->add_option("--mode", c.mode, "full|corner|quotient");
    sub->add_option("--out", c.out);
    sub->add_option("--threads", c.threads);
    add_budget(sub, c);
  }

  auto* tv_cmd = app.add_subcommand("tv", "Bootstrap TV between two sample files");
  std::string file_a, file_b;
  tv_cmd->add_option("a", file_a)->required()->check(CLI::ExistingFile);
  tv_cmd->add_option("b", file_b)->required()->check(CLI::ExistingFile);
  tv_cmd->add_option("--functional", c.functional);
  tv_cmd->add_option("--resamples", c.resamples);
  tv_cmd->add_option("--seed", c.seed);
  tv_cmd->add_option("--threads", c.threads);

  std::string dataset_dir;
  auto* decay = app.add_subcommand("decay", "Decay curve of a dataset against its stationary rows");
  auto* hist = app.add_subcommand("hist", "Per-step histograms of a dataset");
  std::string hist_steps = "0";
  for (auto* sub : {decay, hist}) {
    sub->add_option("dataset", dataset_dir)->required();
    sub->add_option("--functional", c.functional);
    sub->add_option("--out", c.out);
  }
  decay->add_option("--resamples", c.resamples);
  decay->add_option("--seed", c.seed, "Bootstrap seed (default: the dataset seed)");
  decay->add_option("--threads", c.threads);
  hist->add_option("--steps", hist_steps, "e.g. 10,20,inf");

  auto* dataset = app.add_subcommand("dataset", "Sharded, resumable sample generation");
  dataset->require_subcommand(1);
  auto* ds_init = dataset->add_subcommand("init");
  auto* ds_run = dataset->add_subcommand("run");
  auto* ds_resume = dataset->add_subcommand("resume");
  auto* ds_status = dataset->add_subcommand("status");
  std::string steps_text = "1..52,inf";
  std::vector<std::string> functionals{"d_o"};
  std::uint64_t shard_size = 1000;
  std::optional<std::size_t> max_shards;
  for (auto* sub : {ds_init, ds_run, ds_resume, ds_status}) sub->add_option("--out", dataset_dir, "Dataset directory")->required();
  ds_init->add_option("--seed", c.seed);
  ds_init->add_option("--steps", steps_text);
  ds_init->add_option("--samples", samples, "Samples per step");
  ds_init->add_option("--functional", functionals)->delimiter(',');
  ds_init->add_option("--mode", c.mode);
  ds_init->add_option("--shard-size", shard_size);
  ds_init->add_option("--budget-nodes", c.budget_nodes);
  ds_init->add_option("--budget-seconds", c.budget_seconds);
  ds_init->add_flag("--allow-deep", c.allow_deep);
  for (auto* sub : {ds_run, ds_resume}) {
    sub->add_option("--threads", c.threads);
    sub->add_option("--pdb-dir", c.pdb_dir);
    sub->add_option("--max-shards", max_shards, "Stop after this many shards");
  }

  auto* pdb = app.add_subcommand("pdb", "Pattern databases");
  pdb->require_subcommand(1);
  auto* pdb_build = pdb->add_subcommand("build");
  auto* pdb_info = pdb->add_subcommand("info");
  for (auto* sub : {pdb_build, pdb_info}) sub->add_option("--pdb-dir", c.pdb_dir);
  pdb_build->add_option("--threads", c.threads);

  auto* exact = app.add_subcommand("exact-corner", "Exact evolution of the corner chain");
  exact->require_subcommand(1);
  auto* ex_tables = exact->add_subcommand("tables", "Build and cache the distance table");
  auto* ex_bfs = exact->add_subcommand("bfs", "Distance layer counts");
  auto* ex_decay = exact->add_subcommand("decay", "TV to uniform for n = 0..max-n");
  int max_n = 60;
  std::string projected_out;
  for (auto* sub : {ex_tables, ex_bfs, ex_decay}) {
    sub->add_option("--mode", c.mode, "corner|quotient")->default_val("corner");
    sub->add_option("--pdb-dir", c.pdb_dir);
    sub->add_option("--threads", c.threads);
  }
  ex_decay->add_option("--max-n", max_n)->check(CLI::NonNegativeNumber);
  ex_decay->add_option("--out", c.out, "Full-distribution TV curve CSV");
  ex_decay->add_option("--out-projected", projected_out, "Distance-projection TV curve CSV");

  auto* thresholds = app.add_subcommand("thresholds", "First crossings of a decay CSV");
  std::string curve_file;
  thresholds->add_option("curve", curve_file)->required()->check(CLI::ExistingFile);
  thresholds->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c.threads > 0) omp_set_num_threads(c.threads);

    if (*scramble) {
      RngStream rng(c.seed, c.stream.value_or(sample_stream_id(StreamPurpose::Cli, scramble_n, 0)));
      const MoveSequence word = random_word(scramble_n, rng);
      std::cout << format_moves(word) << '\n' << format_state(apply_sequence(CubeState{}, word)) << '\n';
    } else if (*solve) {
      if (state_text.empty() == moves_text.empty()) throw CLI::ValidationError("give exactly one of a state or --moves");
      const CubeState x = read_state(state_text, moves_text);
      const CubeState target = named_state(target_text);
      const PdbSet pdbs = load_pdbs(c.cache());
      const OptimalResult r = solve_optimal(relative_state(x, target), pdbs, c.budget());
      std::cout << r.distance << '\n' << format_moves(r.solution) << '\n';
      std::fprintf(stderr, "nodes %llu, %.3f s\n", static_cast<unsigned long long>(r.nodes_expanded), r.elapsed_seconds);
    } else if (*walk_sample) {
      sample_rows(c, walk_n, samples);
    } else if (*stationary_sample) {
      sample_rows(c, kStationaryStep, samples);
    } else if (*tv_cmd) {
      const Functional f = functional_from_string(c.functional);
      std::uint64_t sentinels = 0;
      const auto a = read_sample_column(file_a, f, sentinels);
      const auto b = read_sample_column(file_b, f, sentinels);
      const TvEstimate e = bootstrap_tv(a, b, c.resamples, RngStream(c.seed, sample_stream_id(StreamPurpose::Cli, 0, 0)));
      std::printf("tv %s stderr %s ci95 [%s, %s] resamples %d excluded_sentinels %llu\n", format_number(e.point).c_str(),
                  format_number(e.std_error).c_str(), format_number(e.ci_low).c_str(), format_number(e.ci_high).c_str(),
                  e.resamples, static_cast<unsigned long long>(sentinels));
    } else if (*decay) {
      const Functional f = functional_from_string(c.functional);
      const StepSamples s = load_samples(dataset_dir, f);
      const std::uint64_t seed = decay->count("--seed") ? c.seed : load_manifest(dataset_dir).config.root_seed;
      const DecayCurve curve = emit_decay(s, c.resamples, seed);
      Output out(c.out);
      write_decay_csv(out.stream(), curve);
      if (s.dropped_sentinels) std::fprintf(stderr, "excluded %llu sentinel rows\n", static_cast<unsigned long long>(s.dropped_sentinels));
    } else if (*hist) {
      const Functional f = functional_from_string(c.functional);
      const StepSamples s = load_samples(dataset_dir, f);
      const auto files = emit_histograms(s, f, parse_steps(hist_steps), c.out.empty() ? fs::path(dataset_dir) : fs::path(c.out));
      for (const auto& p : files) std::cout << p.string() << '\n';
    } else if (*ds_init) {
      DatasetConfig cfg;
      cfg.mode = sample_mode_from_string(c.mode);
      cfg.root_seed = c.seed;
      cfg.steps = parse_steps(steps_text);
      cfg.samples_per_step = samples;
      cfg.functionals.clear();
      for (const auto& f : functionals) cfg.functionals.push_back(functional_from_string(f));
      cfg.shard_size = shard_size;
      cfg.budget = c.budget();
      const DatasetManifest m = init_dataset(dataset_dir, cfg);
      std::printf("initialized %zu shards in %s\n", m.shards.size(), dataset_dir.c_str());
    } else if (*ds_run || *ds_resume) {
      RunOptions opt;
      opt.threads = c.threads;
      opt.max_shards = max_shards;
      opt.cache_dir = c.cache();
      const RunSummary s = run_dataset(dataset_dir, opt);
      std::printf("completed %zu shards, %zu pending, %llu sentinel rows\n", s.shards_completed, s.shards_pending,
                  static_cast<unsigned long long>(s.sentinel_rows));
    } else if (*ds_status) {
      const DatasetManifest m = load_manifest(dataset_dir);
      verify_dataset(dataset_dir, m);
      std::printf("mode %s seed %llu shards %zu/%zu rows %llu sentinels %llu digests ok\n", to_string(m.config.mode).c_str(),
                  static_cast<unsigned long long>(m.config.root_seed), m.shards_done(), m.shards.size(),
                  static_cast<unsigned long long>(m.rows_done()), static_cast<unsigned long long>(m.sentinel_rows()));
    } else if (*pdb_build) {
      const fs::path dir = c.cache();
      fs::create_directories(dir);
      for (PdbKind k : {PdbKind::Corners, PdbKind::EdgesA, PdbKind::EdgesB}) {
        const auto t0 = std::chrono::steady_clock::now();
        const PatternDatabase p = load_or_build_pdb(dir, k);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %llu entries max %d (%.1f s) %s\n", to_string(k).c_str(), static_cast<unsigned long long>(p.size()),
                    p.max_value(), secs, pdb_path(dir, k).c_str());
      }
    } else if (*pdb_info) {
      const fs::path dir = c.cache();
      for (PdbKind k : {PdbKind::Corners, PdbKind::EdgesA, PdbKind::EdgesB, PdbKind::QuotientCorners}) {
        const fs::path file = pdb_path(dir, k);
        if (!fs::exists(file)) {
          std::printf("%s missing (%s)\n", to_string(k).c_str(), file.c_str());
          continue;
        }
        const PatternDatabase p = load_pdb(file, k);
        std::printf("%s %llu entries max %d layers", to_string(k).c_str(), static_cast<unsigned long long>(p.size()), p.max_value());
        for (auto n : p.layer_counts) std::printf(" %llu", static_cast<unsigned long long>(n));
        std::printf("\n");
      }
    } else if (*ex_tables) {
      const ChainMode mode = chain_mode_from_string(c.mode);
      const DistanceTable t = load_or_build_distance_table(mode, c.cache());
      print_layers(t.layer_counts);
    } else if (*ex_bfs) {
      print_layers(chain_bfs(chain_mode_from_string(c.mode)).layer_counts);
    } else if (*ex_decay) {
      const ChainMode mode = chain_mode_from_string(c.mode);
      const DistanceTable t = load_or_build_distance_table(mode, c.cache());
      const ExactDecay d = exact_decay(mode, max_n, t);
      const DecayCurve full = exact_curve(d.tv_full);
      const DecayCurve proj = exact_curve(d.tv_projected);
      if (!c.out.empty()) write_curve(c.out, full);
      if (!projected_out.empty()) write_curve(projected_out, proj);
      if (c.out.empty()) write_decay_csv(std::cout, full);
      report_thresholds(to_string(mode) + " full", full);
      report_thresholds(to_string(mode) + " projected", proj);
    } else if (*thresholds) {
      std::ifstream in(curve_file);
      const DecayCurve curve = read_decay_csv(in);
      Output out(c.out);
      write_threshold_csv(out.stream(), threshold_report(curve));
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const BudgetExhausted& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kBudget;
  } catch (const MemoryGuardError& e) {
    std::fprintf(stderr, "memory guard: %s\n", e.what());
    return kMemory;
  } catch (const CorruptManifestError& e) {
    std::fprintf(stderr, "corrupt dataset: %s\n", e.what());
    return kCorrupt;
  } catch (const MissingPdbError& e) {
    std::fprintf(stderr, "%s (run 'cubemix pdb build' first)\n", e.what());
    return kMissingPdb;
  } catch (const MoveParseError& e) {
    std::fprintf(stderr, "bad move sequence: %s\n", e.what());
    return kUsage;
  } catch (const FaceletParseError& e) {
    std::fprintf(stderr, "bad state: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kOk;
}
