#include "cubemix/pdb.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <unistd.h>

#include "cubemix/coord.hpp"
#include "cubemix/memory_guard.hpp"

namespace cubemix {
namespace {

constexpr char kMagic[8] = {'C', 'U', 'B', 'E', 'M', 'I', 'X', 'P'};
constexpr std::size_t kHeaderSize = 32;

template <class T>
void put_le(std::vector<char>& buf, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

template <class T>
T get_le(const char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

const std::uint32_t kEdgesBOrigin = edge_pattern(CubeState{}, EdgeSet::B).flat();

}  // namespace

std::string to_string(PdbKind kind) {
  switch (kind) {
    case PdbKind::Corners: return "corners";
    case PdbKind::EdgesA: return "edges_a";
    case PdbKind::EdgesB: return "edges_b";
    case PdbKind::QuotientCorners: return "quotient_corners";
  }
  return "unknown";
}

std::uint64_t pdb_entry_count(PdbKind kind) {
  switch (kind) {
    case PdbKind::Corners: return kCornerCoordCount;
    case PdbKind::EdgesA:
    case PdbKind::EdgesB: return kEdgePatternCount;
    case PdbKind::QuotientCorners: return 3674160;
  }
  return 0;
}

int PatternDatabase::max_value() const {
  int m = 0;
  for (auto v : table) m = std::max<int>(m, v);
  return m;
}

PatternDatabase build_pdb(PdbKind kind, Exec exec) {
  PatternDatabase pdb;
  pdb.kind = kind;
  require_memory(pdb_entry_count(kind), "pattern database " + to_string(kind));
  pdb.table.resize(pdb_entry_count(kind));
  switch (kind) {
    case PdbKind::Corners: {
      const CornerMoveTables& t = corner_move_tables();
      pdb.layer_counts = bfs_fill(pdb.table, 0, [&t](std::uint32_t i, int m) { return t.next_flat(i, m); }, exec);
      break;
    }
    case PdbKind::EdgesA:
    case PdbKind::EdgesB: {
      const EdgeMoveTables& t = edge_move_tables();
      const std::uint32_t start = kind == PdbKind::EdgesA ? 0 : kEdgesBOrigin;
      pdb.layer_counts =
          bfs_fill(pdb.table, start, [&t](std::uint32_t i, int m) { return t.next_flat(i, m); }, exec);
      break;
    }
    case PdbKind::QuotientCorners:
      throw std::invalid_argument("build_pdb: the quotient table is built by exact_chain");
  }
  return pdb;
}

void save_pdb(const PatternDatabase& pdb, const std::filesystem::path& file) {
  std::vector<char> header;
  header.insert(header.end(), std::begin(kMagic), std::end(kMagic));
  put_le<std::uint32_t>(header, kPdbFormatVersion);
  put_le<std::uint32_t>(header, static_cast<std::uint32_t>(pdb.kind));
  put_le<std::uint32_t>(header, kMetricFaceTurn);
  put_le<std::uint32_t>(header, 1);
  put_le<std::uint64_t>(header, pdb.table.size());

  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::filesystem::path tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(pdb.table.data()), static_cast<std::streamsize>(pdb.table.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

PatternDatabase load_pdb(const std::filesystem::path& file, PdbKind expected) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw MissingPdbError("pattern database not found: " + file.string());
  char header[kHeaderSize];
  if (!in.read(header, kHeaderSize)) throw PdbFormatError(file.string() + ": truncated header");
  if (std::memcmp(header, kMagic, sizeof kMagic) != 0) throw PdbFormatError(file.string() + ": bad magic");
  const auto version = get_le<std::uint32_t>(header + 8);
  const auto kind = get_le<std::uint32_t>(header + 12);
  const auto metric = get_le<std::uint32_t>(header + 16);
  const auto width = get_le<std::uint32_t>(header + 20);
  const auto count = get_le<std::uint64_t>(header + 24);
  if (version != kPdbFormatVersion) throw PdbFormatError(file.string() + ": unsupported format version");
  if (kind != static_cast<std::uint32_t>(expected))
    throw PdbFormatError(file.string() + ": holds " + to_string(static_cast<PdbKind>(kind)) + ", expected " +
                         to_string(expected));
  if (metric != kMetricFaceTurn) throw PdbFormatError(file.string() + ": unknown metric id");
  if (width != 1) throw PdbFormatError(file.string() + ": unsupported entry width");
  if (count != pdb_entry_count(expected)) throw PdbFormatError(file.string() + ": wrong entry count");

  PatternDatabase pdb;
  pdb.kind = expected;
  pdb.table.resize(count);
  if (!in.read(reinterpret_cast<char*>(pdb.table.data()), static_cast<std::streamsize>(count)))
    throw PdbFormatError(file.string() + ": truncated table");
  if (in.peek() != std::char_traits<char>::eof()) throw PdbFormatError(file.string() + ": trailing bytes");

  for (auto v : pdb.table) {
    if (v == kUnvisited) throw PdbFormatError(file.string() + ": unfilled entry");
    if (pdb.layer_counts.size() <= v) pdb.layer_counts.resize(v + 1, 0);
    ++pdb.layer_counts[v];
  }
  return pdb;
}

std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("CUBEMIX_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "cubemix";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "cubemix";
  return std::filesystem::path(".cubemix-cache");
}

std::filesystem::path pdb_path(const std::filesystem::path& dir, PdbKind kind) {
  return dir / (to_string(kind) + ".pdb");
}

PatternDatabase load_or_build_pdb(const std::filesystem::path& dir, PdbKind kind) {
  const auto file = pdb_path(dir, kind);
  if (std::filesystem::exists(file)) return load_pdb(file, kind);
  PatternDatabase pdb = build_pdb(kind);
  save_pdb(pdb, file);
  return pdb;
}

PatternCoords pattern_coords(const CubeState& s) {
  return {corner_coordinate(s).flat(), edge_pattern(s, EdgeSet::A).flat(), edge_pattern(s, EdgeSet::B).flat()};
}

PatternCoords apply_move(const PatternCoords& c, int move_index) {
  const CornerMoveTables& ct = corner_move_tables();
  const EdgeMoveTables& et = edge_move_tables();
  return {ct.next_flat(c.corner, move_index), et.next_flat(c.edges_a, move_index),
          et.next_flat(c.edges_b, move_index)};
}

PdbSet load_pdbs(const std::filesystem::path& dir) {
  PdbSet set;
  set.corners = load_pdb(pdb_path(dir, PdbKind::Corners), PdbKind::Corners);
  set.edges_a = load_pdb(pdb_path(dir, PdbKind::EdgesA), PdbKind::EdgesA);
  set.edges_b = load_pdb(pdb_path(dir, PdbKind::EdgesB), PdbKind::EdgesB);
  return set;
}

PdbSet load_or_build_pdbs(const std::filesystem::path& dir) {
  PdbSet set;
  set.corners = load_or_build_pdb(dir, PdbKind::Corners);
  set.edges_a = load_or_build_pdb(dir, PdbKind::EdgesA);
  set.edges_b = load_or_build_pdb(dir, PdbKind::EdgesB);
  return set;
}

}  // namespace cubemix
