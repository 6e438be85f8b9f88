// Sticker-level model of the cube. Face turns are computed as permutations of
// the 54 sticker slots from 3D geometry, which makes this model an independent
// oracle for the cubie engine in cube.hpp.
//
// Serialization: faces in order U, R, F, D, L, B; each face 9 stickers
// row-major as seen looking straight at that face, with
//   U: B edge on top      R, F, L, B: U edge on top      D: F edge on top.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cubemix/cube.hpp"

namespace cubemix {

inline constexpr int kStickerCount = 54;

struct FaceletState {
  std::array<Face, kStickerCount> stickers{};

  static FaceletState solved();
  friend bool operator==(const FaceletState&, const FaceletState&) = default;
};

/// 3D placement of a sticker: cubie position in {-1,0,1}^3 and outward normal.
/// Axes: x from L to R, y from D to U, z from B to F.
struct StickerGeometry {
  std::array<int, 3> position;
  std::array<int, 3> normal;
};

StickerGeometry sticker_geometry(int index);
int sticker_at(const std::array<int, 3>& position, const std::array<int, 3>& normal);

/// source[j] is the sticker slot whose content lands in slot j after the move.
using StickerPermutation = std::array<std::uint8_t, kStickerCount>;
const StickerPermutation& facelet_move_permutation(Move m);

FaceletState apply_facelet_move(const FaceletState& f, Move m);
FaceletState apply_facelet_sequence(const FaceletState& f, const MoveSequence& s);

/// Sticker slots of each corner slot, starting with the U/D sticker and
/// continuing clockwise around the corner as seen from outside.
const std::array<std::array<std::uint8_t, 3>, kCornerCount>& corner_facelets();
/// Sticker slots of each edge slot; the first is the orientation reference
/// (U/D sticker, or F/B sticker for middle-layer edges).
const std::array<std::array<std::uint8_t, 2>, kEdgeCount>& edge_facelets();

FaceletState to_facelets(const CubeState& s);

class FaceletParseError : public std::runtime_error {
 public:
  enum class Kind { WrongLength, BadCharacter, Multiplicity, IllegalCubie, Unreachable };
  FaceletParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Reads cubies off a sticker pattern without checking reachability.
/// Throws FaceletParseError (IllegalCubie) when a slot matches no cubie or a
/// cubie appears twice.
CubeState cubies_from_facelets(const FaceletState& f);

/// Facelet string -> cubie state. Distinguishes malformed strings, sticker
/// patterns that no cubie assignment produces, and legal-looking but
/// unreachable configurations.
CubeState parse_state(std::string_view text);
std::string format_state(const CubeState& s);

std::string to_string(const FaceletState& f);
FaceletState facelets_from_string(std::string_view text);

}  // namespace cubemix
