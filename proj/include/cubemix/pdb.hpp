// Pattern databases: exact distance tables on projected pattern spaces in the
// 18-move metric, used as admissible heuristics for optimal solving.
//
// On-disk format (little-endian), see docs/pdb_format.md:
//   0   8 bytes  magic "CUBEMIXP"
//   8   u32      format version (1)
//   12  u32      kind (PdbKind)
//   16  u32      metric id (1 = 18-move face-turn metric)
//   20  u32      entry width in bytes (1)
//   24  u64      entry count
//   32  entries, one byte each
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubemix/cube.hpp"
#include "cubemix/kernels.hpp"

namespace cubemix {

enum class PdbKind : std::uint32_t { Corners = 0, EdgesA = 1, EdgesB = 2, QuotientCorners = 3 };

inline constexpr std::uint32_t kPdbFormatVersion = 1;
inline constexpr std::uint32_t kMetricFaceTurn = 1;

std::string to_string(PdbKind kind);
std::uint64_t pdb_entry_count(PdbKind kind);

struct PatternDatabase {
  PdbKind kind = PdbKind::Corners;
  std::vector<std::uint8_t> table;
  std::vector<std::uint64_t> layer_counts;

  std::uint64_t size() const { return table.size(); }
  std::uint8_t operator[](std::uint32_t index) const { return table[index]; }
  int max_value() const;
};

class PdbFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingPdbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Breadth-first fill of the pattern space from the solved pattern.
/// Corners, EdgesA and EdgesB only; the quotient table lives in exact_chain.
PatternDatabase build_pdb(PdbKind kind, Exec exec = Exec::Parallel);

void save_pdb(const PatternDatabase& pdb, const std::filesystem::path& file);
PatternDatabase load_pdb(const std::filesystem::path& file, PdbKind expected);

/// --pdb-dir, else $CUBEMIX_CACHE_DIR, else $XDG_CACHE_HOME/cubemix, else ~/.cache/cubemix.
std::filesystem::path default_cache_dir();
std::filesystem::path pdb_path(const std::filesystem::path& dir, PdbKind kind);

/// Loads from the cache directory, building and persisting on a miss.
PatternDatabase load_or_build_pdb(const std::filesystem::path& dir, PdbKind kind);

/// Search-time view of a cube: the three pattern coordinates, which together
/// determine the full state.
struct PatternCoords {
  std::uint32_t corner = 0;
  std::uint32_t edges_a = 0;
  std::uint32_t edges_b = 0;
  friend bool operator==(const PatternCoords&, const PatternCoords&) = default;
};

PatternCoords pattern_coords(const CubeState& s);
PatternCoords apply_move(const PatternCoords& c, int move_index);

struct PdbSet {
  PatternDatabase corners;
  PatternDatabase edges_a;
  PatternDatabase edges_b;

  /// max of the three lookups; never exceeds the true distance.
  int heuristic(const PatternCoords& c) const {
    int h = corners.table[c.corner];
    if (edges_a.table[c.edges_a] > h) h = edges_a.table[c.edges_a];
    if (edges_b.table[c.edges_b] > h) h = edges_b.table[c.edges_b];
    return h;
  }
  int heuristic(const CubeState& s) const { return heuristic(pattern_coords(s)); }
};

/// Throws MissingPdbError when any table is absent from `dir`.
PdbSet load_pdbs(const std::filesystem::path& dir);
PdbSet load_or_build_pdbs(const std::filesystem::path& dir);

}  // namespace cubemix
