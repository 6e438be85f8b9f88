#include "cubemix/dataset.hpp"

#include <omp.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "cubemix/coord.hpp"
#include "cubemix/exact_chain.hpp"
#include "cubemix/walk.hpp"

namespace cubemix {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_atomically(const fs::path& file, const std::string& bytes) {
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, file);
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

std::vector<Functional> ordered(std::vector<Functional> fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

std::string shard_header(const std::vector<Functional>& fs) {
  std::string h = "n,sample_index";
  for (Functional f : fs) h += "," + to_string(f);
  return h + "\n";
}

json budget_json(const SolveBudget& b) {
  json j;
  j["max_nodes"] = b.max_nodes ? json(*b.max_nodes) : json(nullptr);
  j["max_seconds"] = b.max_seconds ? json(*b.max_seconds) : json(nullptr);
  j["allow_deep"] = b.allow_deep;
  return j;
}

SolveBudget budget_from(const json& j) {
  SolveBudget b;
  if (!j.at("max_nodes").is_null()) b.max_nodes = j.at("max_nodes").get<std::uint64_t>();
  if (!j.at("max_seconds").is_null()) b.max_seconds = j.at("max_seconds").get<double>();
  b.allow_deep = j.at("allow_deep").get<bool>();
  return b;
}

std::string step_label(int n) { return n == kStationaryStep ? "inf" : std::to_string(n); }

}  // namespace

std::string to_string(Functional f) {
  switch (f) {
    case Functional::Origin: return "d_o";
    case Functional::Superflip: return "d_s";
    case Functional::Checkerboard: return "d_c";
  }
  throw std::invalid_argument("bad functional");
}

Functional functional_from_string(const std::string& s) {
  if (s == "d_o" || s == "origin") return Functional::Origin;
  if (s == "d_s" || s == "superflip") return Functional::Superflip;
  if (s == "d_c" || s == "checkerboard") return Functional::Checkerboard;
  throw std::invalid_argument("unknown functional '" + s + "' (expected d_o, d_s or d_c)");
}

CubeState functional_target(Functional f) {
  switch (f) {
    case Functional::Origin: return named_state(NamedState::Origin);
    case Functional::Superflip: return named_state(NamedState::Superflip);
    case Functional::Checkerboard: return named_state(NamedState::Checkerboard);
  }
  throw std::invalid_argument("bad functional");
}

std::string to_string(SampleMode m) {
  switch (m) {
    case SampleMode::Full: return "full";
    case SampleMode::Corner: return "corner";
    case SampleMode::Quotient: return "quotient";
  }
  throw std::invalid_argument("bad mode");
}

SampleMode sample_mode_from_string(const std::string& s) {
  if (s == "full") return SampleMode::Full;
  if (s == "corner") return SampleMode::Corner;
  if (s == "quotient") return SampleMode::Quotient;
  throw std::invalid_argument("unknown mode '" + s + "' (expected full, corner or quotient)");
}

std::vector<int> parse_steps(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument("bad step '" + s + "'");
    return v;
  };
  while (std::getline(in, item, ',')) {
    if (item == "inf") {
      out.push_back(kStationaryStep);
    } else if (auto dots = item.find(".."); dots != std::string::npos) {
      const int a = to_int(item.substr(0, dots));
      const int b = to_int(item.substr(dots + 2));
      if (b < a) throw std::invalid_argument("empty step range '" + item + "'");
      for (int n = a; n <= b; ++n) out.push_back(n);
    } else {
      out.push_back(to_int(item));
    }
  }
  if (out.empty()) throw std::invalid_argument("no steps given");
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate step in '" + text + "'");
  return out;
}

std::uint64_t DatasetManifest::rows_done() const {
  std::uint64_t r = 0;
  for (const auto& s : shards) r += s.rows;
  return r;
}

std::uint64_t DatasetManifest::sentinel_rows() const {
  std::uint64_t r = 0;
  for (const auto& s : shards) r += s.sentinel_rows;
  return r;
}

std::size_t DatasetManifest::shards_done() const {
  return static_cast<std::size_t>(std::count_if(shards.begin(), shards.end(), [](const ShardStatus& s) { return s.done; }));
}

std::string manifest_to_json(const DatasetManifest& m) {
  json j;
  j["format_version"] = m.format_version;
  j["mode"] = to_string(m.config.mode);
  j["root_seed"] = m.config.root_seed;
  j["steps"] = m.config.steps;
  j["samples_per_step"] = m.config.samples_per_step;
  json fs = json::array();
  for (Functional f : m.config.functionals) fs.push_back(to_string(f));
  j["functionals"] = fs;
  j["shard_size"] = m.config.shard_size;
  j["budget"] = budget_json(m.config.budget);
  json shards = json::array();
  for (const ShardStatus& s : m.shards) {
    shards.push_back({{"id", s.id},
                      {"step", s.step},
                      {"first_index", s.first_index},
                      {"count", s.count},
                      {"status", s.done ? "done" : "pending"},
                      {"rows", s.rows},
                      {"sentinel_rows", s.sentinel_rows},
                      {"digest", s.digest}});
  }
  j["shards"] = shards;
  return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    DatasetManifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kDatasetFormatVersion)
      throw CorruptManifestError("unsupported manifest version " + std::to_string(m.format_version));
    m.config.mode = sample_mode_from_string(j.at("mode").get<std::string>());
    m.config.root_seed = j.at("root_seed").get<std::uint64_t>();
    m.config.steps = j.at("steps").get<std::vector<int>>();
    m.config.samples_per_step = j.at("samples_per_step").get<std::uint64_t>();
    m.config.functionals.clear();
    for (const auto& f : j.at("functionals")) m.config.functionals.push_back(functional_from_string(f.get<std::string>()));
    m.config.shard_size = j.at("shard_size").get<std::uint64_t>();
    m.config.budget = budget_from(j.at("budget"));
    for (const auto& s : j.at("shards")) {
      ShardStatus st;
      st.id = s.at("id").get<int>();
      st.step = s.at("step").get<int>();
      st.first_index = s.at("first_index").get<std::uint64_t>();
      st.count = s.at("count").get<std::uint64_t>();
      const auto status = s.at("status").get<std::string>();
      if (status != "done" && status != "pending") throw CorruptManifestError("bad shard status '" + status + "'");
      st.done = status == "done";
      st.rows = s.at("rows").get<std::uint64_t>();
      st.sentinel_rows = s.at("sentinel_rows").get<std::uint64_t>();
      st.digest = s.at("digest").get<std::string>();
      if (st.id != static_cast<int>(m.shards.size())) throw CorruptManifestError("shard ids out of order");
      if (st.done && (st.rows != st.count || st.digest.size() != 64))
        throw CorruptManifestError("shard " + std::to_string(st.id) + " marked done without rows and digest");
      m.shards.push_back(st);
    }
    return m;
  } catch (const CorruptManifestError&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptManifestError(std::string("manifest unreadable: ") + e.what());
  }
}

fs::path manifest_path(const fs::path& dir) { return dir / "manifest.json"; }

fs::path shard_path(const fs::path& dir, int shard_id) {
  char name[32];
  std::snprintf(name, sizeof name, "shard_%05d.csv", shard_id);
  return dir / name;
}

DatasetManifest init_dataset(const fs::path& dir, const DatasetConfig& config) {
  if (config.steps.empty()) throw std::invalid_argument("dataset needs at least one step");
  if (config.samples_per_step == 0 || config.shard_size == 0)
    throw std::invalid_argument("samples per step and shard size must be positive");
  if (config.functionals.empty()) throw std::invalid_argument("dataset needs at least one functional");
  if (config.samples_per_step >= (std::uint64_t{1} << 40)) throw std::invalid_argument("too many samples per step");
  for (int n : config.steps)
    if (n != kStationaryStep && (n < 0 || n > 0xfffe)) throw std::invalid_argument("step out of range");
  fs::create_directories(dir);
  if (fs::exists(manifest_path(dir))) throw std::invalid_argument(dir.string() + " already holds a dataset");

  DatasetManifest m;
  m.config = config;
  m.config.functionals = ordered(config.functionals);
  for (int n : m.config.steps) {
    for (std::uint64_t first = 0; first < m.config.samples_per_step; first += m.config.shard_size) {
      ShardStatus s;
      s.id = static_cast<int>(m.shards.size());
      s.step = n;
      s.first_index = first;
      s.count = std::min(m.config.shard_size, m.config.samples_per_step - first);
      m.shards.push_back(s);
    }
  }
  save_manifest(dir, m);
  return m;
}

DatasetManifest load_manifest(const fs::path& dir) {
  const fs::path file = manifest_path(dir);
  if (!fs::exists(file)) throw CorruptManifestError("no manifest in " + dir.string());
  return manifest_from_json(read_file(file));
}

void save_manifest(const fs::path& dir, const DatasetManifest& m) { write_atomically(manifest_path(dir), manifest_to_json(m)); }

std::string sha256_file(const fs::path& file) { return sha256_hex(read_file(file)); }

void verify_dataset(const fs::path& dir, const DatasetManifest& m) {
  for (const ShardStatus& s : m.shards) {
    if (!s.done) continue;
    const fs::path file = shard_path(dir, s.id);
    if (!fs::exists(file)) throw CorruptManifestError("shard file missing: " + file.string());
    if (sha256_file(file) != s.digest) throw CorruptManifestError("digest mismatch in " + file.string());
  }
}

DistanceContext DistanceContext::for_mode(SampleMode mode, const fs::path& cache_dir) {
  DistanceContext ctx;
  ctx.mode_ = mode;
  if (mode == SampleMode::Full) {
    ctx.pdbs_ = std::make_shared<const PdbSet>(load_pdbs(cache_dir));
  } else {
    const ChainMode cm = mode == SampleMode::Corner ? ChainMode::Corner : ChainMode::Quotient;
    ctx.table_ = std::make_shared<const std::vector<std::uint8_t>>(load_or_build_distance_table(cm, cache_dir).distances);
  }
  return ctx;
}

int DistanceContext::measure(const CubeState& x, Functional f, const SolveBudget& budget) const {
  const CubeState target = functional_target(f);
  if (mode_ == SampleMode::Full) {
    try {
      return distance(x, target, *pdbs_, budget);
    } catch (const BudgetExhausted&) {
      return kSentinelDistance;
    }
  }
  const CornerConfig rel = corner_config(relative_state(x, target));
  const ChainMode cm = mode_ == SampleMode::Corner ? ChainMode::Corner : ChainMode::Quotient;
  return (*table_)[chain_index(cm, rel)];
}

CubeState sample_state(std::uint64_t root_seed, int n, std::uint64_t sample_index) {
  if (n == kStationaryStep) {
    RngStream rng(root_seed, sample_stream_id(StreamPurpose::Stationary, n, sample_index));
    return uniform_state(rng);
  }
  RngStream rng(root_seed, sample_stream_id(StreamPurpose::Walk, n, sample_index));
  return walk(CubeState{}, n, rng);
}

RunSummary run_dataset(const fs::path& dir, const RunOptions& options) {
  DatasetManifest m = load_manifest(dir);
  verify_dataset(dir, m);

  std::vector<int> todo;
  for (const ShardStatus& s : m.shards)
    if (!s.done) todo.push_back(s.id);
  if (options.max_shards && todo.size() > *options.max_shards) todo.resize(*options.max_shards);

  RunSummary summary;
  if (!todo.empty()) {
    const fs::path cache = options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
    const DistanceContext ctx = DistanceContext::for_mode(m.config.mode, cache);
    const std::string header = shard_header(m.config.functionals);
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t t = 0; t < todo.size(); ++t) {
      try {
        ShardStatus st = m.shards[todo[t]];
        std::string body = header;
        std::uint64_t sentinels = 0;
        for (std::uint64_t i = st.first_index; i < st.first_index + st.count; ++i) {
          const CubeState x = sample_state(m.config.root_seed, st.step, i);
          body += std::to_string(st.step) + "," + std::to_string(i);
          bool sentinel = false;
          for (Functional f : m.config.functionals) {
            const int d = ctx.measure(x, f, m.config.budget);
            sentinel |= d == kSentinelDistance;
            body += "," + std::to_string(d);
          }
          sentinels += sentinel ? 1 : 0;
          body += "\n";
        }
        const fs::path file = shard_path(dir, st.id);
        write_atomically(file, body);
        st.done = true;
        st.rows = st.count;
        st.sentinel_rows = sentinels;
        st.digest = sha256_hex(body);
#pragma omp critical(cubemix_manifest)
        {
          m.shards[st.id] = st;
          save_manifest(dir, m);
          ++summary.shards_completed;
        }
      } catch (...) {
#pragma omp critical(cubemix_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  summary.shards_pending = m.shards.size() - m.shards_done();
  summary.sentinel_rows = m.sentinel_rows();
  return summary;
}

StepSamples load_samples(const fs::path& dir, Functional f) {
  const DatasetManifest m = load_manifest(dir);
  verify_dataset(dir, m);
  const auto& fs_list = m.config.functionals;
  const auto it = std::find(fs_list.begin(), fs_list.end(), f);
  if (it == fs_list.end()) throw std::invalid_argument("dataset has no column " + to_string(f));
  const std::size_t column = 2 + static_cast<std::size_t>(it - fs_list.begin());

  StepSamples out;
  for (const ShardStatus& s : m.shards) {
    if (!s.done) continue;
    std::istringstream in(read_file(shard_path(dir, s.id)));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() != 2 + fs_list.size()) throw CorruptManifestError("malformed row in shard " + std::to_string(s.id));
      const int n = std::stoi(cells[0]);
      const int d = std::stoi(cells[column]);
      if (d == kSentinelDistance) {
        ++out.dropped_sentinels;
        continue;
      }
      out.by_step[n].push_back(d);
    }
  }
  return out;
}

DecayCurve emit_decay(const StepSamples& samples, int resamples, std::uint64_t seed, std::vector<TvEstimate>* estimates) {
  const auto stat = samples.by_step.find(kStationaryStep);
  if (stat == samples.by_step.end() || stat->second.empty())
    throw std::invalid_argument("decay needs stationary samples (step inf)");
  DecayCurve curve;
  curve.source = DecayCurve::Source::MonteCarlo;
  if (estimates) estimates->clear();
  for (const auto& [n, values] : samples.by_step) {
    if (n == kStationaryStep || values.empty()) continue;
    const RngStream rng(seed, sample_stream_id(StreamPurpose::Bootstrap, n, 0));
    const TvEstimate e = bootstrap_tv(values, stat->second, resamples, rng);
    curve.points.push_back({n, e.point, e.std_error});
    if (estimates) estimates->push_back(e);
  }
  curve.check();
  return curve;
}

std::vector<Histogram> histograms(const StepSamples& samples, const std::vector<int>& steps) {
  std::vector<Histogram> out;
  for (int n : steps) {
    const auto it = samples.by_step.find(n);
    if (it == samples.by_step.end() || it->second.empty())
      throw std::invalid_argument("no samples at step " + step_label(n));
    out.push_back({n, empirical(it->second)});
  }
  return out;
}

void write_histogram_csv(std::ostream& out, const EmpiricalDistribution& d) {
  out << "distance,count,probability\n";
  const Law p = d.probabilities();
  for (int k = 0; k < kDistanceSupport; ++k) out << k << ',' << d.counts[k] << ',' << format_number(p[k]) << '\n';
}

std::vector<fs::path> emit_histograms(const StepSamples& samples, Functional f, const std::vector<int>& steps,
                                      const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<fs::path> files;
  for (const Histogram& h : histograms(samples, steps)) {
    const fs::path file = out_dir / ("hist_" + to_string(f) + "_n" + step_label(h.n) + ".csv");
    std::ostringstream body;
    write_histogram_csv(body, h.dist);
    write_atomically(file, body.str());
    files.push_back(file);
  }
  return files;
}

}  // namespace cubemix
