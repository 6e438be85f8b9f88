// The 3x3x3 cube group at cubie level: states, the 18 face-turn generators,
// group operations, move notation and named target states.
//
// Conventions
//   Faces are ordered U, R, F, D, L, B (the facelet serialization order).
//   Corner slots: URF UFL ULB UBR DFR DLF DBL DRB.
//   Edge slots:   UR UF UL UB DR DF DL DB FR FL BL BR.
//   corner_perm[s] is the cubie sitting in slot s, corner_ori[s] its twist.
//   Applying a move right-multiplies: apply_move(g, m) == compose(g, generator_state(m)).
//
// The generator states are not typed in by hand; they are derived once from
// the facelet model (see facelet.hpp).
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cubemix {

enum class Face : std::uint8_t { U = 0, R = 1, F = 2, D = 3, L = 4, B = 5 };

inline constexpr int kFaceCount = 6;
inline constexpr int kMoveCount = 18;
inline constexpr int kCornerCount = 8;
inline constexpr int kEdgeCount = 12;

constexpr Face opposite(Face f) { return static_cast<Face>((static_cast<int>(f) + 3) % 6); }
char face_letter(Face f);

/// One of the 18 generators: a clockwise turn of `face` by 90 * amount degrees.
class Move {
 public:
  constexpr Move() = default;
  Move(Face face, int amount);

  static Move from_index(int index);

  constexpr Face face() const { return face_; }
  constexpr int amount() const { return amount_; }
  /// Dense index in [0, 18): face * 3 + (amount - 1).
  constexpr int index() const { return static_cast<int>(face_) * 3 + amount_ - 1; }
  Move inverse() const { return Move(face_, 4 - amount_); }

  friend constexpr bool operator==(Move, Move) = default;
  friend constexpr auto operator<=>(Move, Move) = default;

 private:
  Face face_ = Face::U;
  std::uint8_t amount_ = 1;
};

using MoveSequence = std::vector<Move>;

const std::array<Move, kMoveCount>& all_moves();

/// Inverse word: reversed order, each move inverted.
MoveSequence invert_sequence(const MoveSequence& s);

struct CubeState {
  std::array<std::uint8_t, kCornerCount> corner_perm{0, 1, 2, 3, 4, 5, 6, 7};
  std::array<std::uint8_t, kCornerCount> corner_ori{};
  std::array<std::uint8_t, kEdgeCount> edge_perm{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  std::array<std::uint8_t, kEdgeCount> edge_ori{};

  friend bool operator==(const CubeState&, const CubeState&) = default;
};

/// Group product (a then b).
CubeState compose(const CubeState& a, const CubeState& b);
CubeState inverse(const CubeState& x);

const CubeState& generator_state(Move m);
CubeState apply_move(const CubeState& state, Move m);
CubeState apply_sequence(const CubeState& state, const MoveSequence& s);

/// r = inverse(target) * x; distance of x to target equals distance of r to origin.
CubeState relative_state(const CubeState& x, const CubeState& target);

enum class NamedState { Origin, Superflip, Checkerboard };
CubeState named_state(NamedState name);
/// Accepts "origin", "superflip", "checkerboard"; throws std::invalid_argument otherwise.
CubeState named_state(std::string_view name);

struct Violation {
  enum class Kind {
    CornerPermutation,
    EdgePermutation,
    CornerOrientationRange,
    EdgeOrientationRange,
    CornerTwistSum,
    EdgeFlipSum,
    PermutationParity,
  };
  Kind kind;
  std::string detail;
};

/// Every violated reachability invariant; empty means the state is in the cube group.
std::vector<Violation> validate(const CubeState& state);
inline bool is_valid(const CubeState& state) { return validate(state).empty(); }

/// Parity of a permutation given as an array (0 even, 1 odd).
template <std::size_t N>
int permutation_parity(const std::array<std::uint8_t, N>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions & 1;
}

class MoveParseError : public std::runtime_error {
 public:
  MoveParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Accepts "R3"-style tokens and Singmaster aliases ("R", "R2", "R'"); whitespace optional.
MoveSequence parse_moves(std::string_view text);
/// Emits the digit notation, space separated.
std::string format_moves(const MoveSequence& s);
std::string format_move(Move m);

/// Compact 100-bit packing used as a dedup key: 5 bits per corner (cubie, twist)
/// in `hi`, 5 bits per edge (cubie, flip) in `lo`.
struct StateKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const StateKey&, const StateKey&) = default;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

StateKey pack(const CubeState& s);
CubeState unpack(StateKey key);

}  // namespace cubemix
