#include "cubemix/facelet.hpp"

#include <algorithm>

namespace cubemix {
namespace {

using Vec3 = std::array<int, 3>;

constexpr Vec3 kFaceNormal[kFaceCount] = {
    {0, 1, 0},   // U
    {1, 0, 0},   // R
    {0, 0, 1},   // F
    {0, -1, 0},  // D
    {-1, 0, 0},  // L
    {0, 0, -1},  // B
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

int dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Quarter turn clockwise as seen from outside along axis a (a right-handed
// rotation by -90 degrees): v' = -(a x v) + a (a . v).
Vec3 quarter_turn(const Vec3& axis, const Vec3& v) {
  Vec3 c = cross(axis, v);
  int d = dot(axis, v);
  return {-c[0] + axis[0] * d, -c[1] + axis[1] * d, -c[2] + axis[2] * d};
}

Face face_of_normal(const Vec3& n) {
  for (int f = 0; f < kFaceCount; ++f)
    if (kFaceNormal[f] == n) return static_cast<Face>(f);
  throw std::logic_error("not a face normal");
}

constexpr Vec3 kCornerPos[kCornerCount] = {
    {1, 1, 1},   {-1, 1, 1},   {-1, 1, -1},  {1, 1, -1},  // URF UFL ULB UBR
    {1, -1, 1},  {-1, -1, 1},  {-1, -1, -1}, {1, -1, -1}, // DFR DLF DBL DRB
};

constexpr Vec3 kEdgePos[kEdgeCount] = {
    {1, 1, 0},  {0, 1, 1},  {-1, 1, 0},  {0, 1, -1},   // UR UF UL UB
    {1, -1, 0}, {0, -1, 1}, {-1, -1, 0}, {0, -1, -1},  // DR DF DL DB
    {1, 0, 1},  {-1, 0, 1}, {-1, 0, -1}, {1, 0, -1},   // FR FL BL BR
};

struct PieceTables {
  std::array<std::array<std::uint8_t, 3>, kCornerCount> corners{};
  std::array<std::array<std::uint8_t, 2>, kEdgeCount> edges{};
  // Face labels of each cubie's stickers in home position, same order as above.
  std::array<std::array<Face, 3>, kCornerCount> corner_labels{};
  std::array<std::array<Face, 2>, kEdgeCount> edge_labels{};
};

PieceTables build_piece_tables() {
  PieceTables t;
  for (int c = 0; c < kCornerCount; ++c) {
    const Vec3& p = kCornerPos[c];
    Vec3 ud{0, p[1], 0};
    Vec3 nx{p[0], 0, 0};
    Vec3 nz{0, 0, p[2]};
    // Clockwise order seen from outside: (n1 x n2) . p < 0.
    Vec3 second = dot(cross(ud, nx), p) < 0 ? nx : nz;
    Vec3 third = second == nx ? nz : nx;
    const Vec3 normals[3] = {ud, second, third};
    for (int k = 0; k < 3; ++k) {
      t.corners[c][k] = static_cast<std::uint8_t>(sticker_at(p, normals[k]));
      t.corner_labels[c][k] = face_of_normal(normals[k]);
    }
  }
  for (int e = 0; e < kEdgeCount; ++e) {
    const Vec3& p = kEdgePos[e];
    Vec3 first, second;
    if (p[1] != 0) {
      first = {0, p[1], 0};
      second = p[0] != 0 ? Vec3{p[0], 0, 0} : Vec3{0, 0, p[2]};
    } else {
      first = {0, 0, p[2]};
      second = {p[0], 0, 0};
    }
    t.edges[e] = {static_cast<std::uint8_t>(sticker_at(p, first)),
                  static_cast<std::uint8_t>(sticker_at(p, second))};
    t.edge_labels[e] = {face_of_normal(first), face_of_normal(second)};
  }
  return t;
}

const PieceTables& piece_tables() {
  static const PieceTables tables = build_piece_tables();
  return tables;
}

std::array<StickerPermutation, kMoveCount> build_move_permutations() {
  std::array<StickerPermutation, kMoveCount> perms{};
  for (Move m : all_moves()) {
    const Vec3& axis = kFaceNormal[static_cast<int>(m.face())];
    StickerPermutation& src = perms[m.index()];
    for (int i = 0; i < kStickerCount; ++i) src[i] = static_cast<std::uint8_t>(i);
    for (int i = 0; i < kStickerCount; ++i) {
      StickerGeometry g = sticker_geometry(i);
      if (dot(g.position, axis) != 1) continue;
      Vec3 p = g.position, n = g.normal;
      for (int k = 0; k < m.amount(); ++k) {
        p = quarter_turn(axis, p);
        n = quarter_turn(axis, n);
      }
      src[sticker_at(p, n)] = static_cast<std::uint8_t>(i);
    }
  }
  return perms;
}

bool is_face_letter(char c) {
  return c == 'U' || c == 'R' || c == 'F' || c == 'D' || c == 'L' || c == 'B';
}

Face face_from_letter(char c) {
  switch (c) {
    case 'U': return Face::U;
    case 'R': return Face::R;
    case 'F': return Face::F;
    case 'D': return Face::D;
    case 'L': return Face::L;
    default: return Face::B;
  }
}

}  // namespace

FaceletState FaceletState::solved() {
  FaceletState f;
  for (int i = 0; i < kStickerCount; ++i) f.stickers[i] = static_cast<Face>(i / 9);
  return f;
}

StickerGeometry sticker_geometry(int index) {
  const int face = index / 9;
  const int r = (index % 9) / 3;
  const int c = index % 3;
  Vec3 pos{};
  switch (static_cast<Face>(face)) {
    case Face::U: pos = {-1 + c, 1, -1 + r}; break;
    case Face::R: pos = {1, 1 - r, 1 - c}; break;
    case Face::F: pos = {-1 + c, 1 - r, 1}; break;
    case Face::D: pos = {-1 + c, -1, 1 - r}; break;
    case Face::L: pos = {-1, 1 - r, -1 + c}; break;
    case Face::B: pos = {1 - c, 1 - r, -1}; break;
  }
  return {pos, kFaceNormal[face]};
}

int sticker_at(const std::array<int, 3>& position, const std::array<int, 3>& normal) {
  for (int i = 0; i < kStickerCount; ++i) {
    StickerGeometry g = sticker_geometry(i);
    if (g.position == position && g.normal == normal) return i;
  }
  throw std::logic_error("no sticker at the requested position");
}

const StickerPermutation& facelet_move_permutation(Move m) {
  static const std::array<StickerPermutation, kMoveCount> perms = build_move_permutations();
  return perms[m.index()];
}

FaceletState apply_facelet_move(const FaceletState& f, Move m) {
  const StickerPermutation& src = facelet_move_permutation(m);
  FaceletState out;
  for (int j = 0; j < kStickerCount; ++j) out.stickers[j] = f.stickers[src[j]];
  return out;
}

FaceletState apply_facelet_sequence(const FaceletState& f, const MoveSequence& s) {
  FaceletState out = f;
  for (Move m : s) out = apply_facelet_move(out, m);
  return out;
}

const std::array<std::array<std::uint8_t, 3>, kCornerCount>& corner_facelets() {
  return piece_tables().corners;
}

const std::array<std::array<std::uint8_t, 2>, kEdgeCount>& edge_facelets() {
  return piece_tables().edges;
}

FaceletState to_facelets(const CubeState& s) {
  const PieceTables& t = piece_tables();
  FaceletState f = FaceletState::solved();
  for (int slot = 0; slot < kCornerCount; ++slot) {
    const int cubie = s.corner_perm[slot];
    const int ori = s.corner_ori[slot];
    for (int n = 0; n < 3; ++n) f.stickers[t.corners[slot][(n + ori) % 3]] = t.corner_labels[cubie][n];
  }
  for (int slot = 0; slot < kEdgeCount; ++slot) {
    const int cubie = s.edge_perm[slot];
    const int ori = s.edge_ori[slot];
    for (int n = 0; n < 2; ++n) f.stickers[t.edges[slot][(n + ori) % 2]] = t.edge_labels[cubie][n];
  }
  return f;
}

CubeState cubies_from_facelets(const FaceletState& f) {
  using Kind = FaceletParseError::Kind;
  const PieceTables& t = piece_tables();
  for (int face = 0; face < kFaceCount; ++face) {
    if (f.stickers[face * 9 + 4] != static_cast<Face>(face))
      throw FaceletParseError(Kind::IllegalCubie,
                              std::string("center of face ") + face_letter(static_cast<Face>(face)) +
                                  " is out of place");
  }

  CubeState s;
  std::array<bool, kCornerCount> seen_corner{};
  for (int slot = 0; slot < kCornerCount; ++slot) {
    std::array<Face, 3> labels{};
    for (int k = 0; k < 3; ++k) labels[k] = f.stickers[t.corners[slot][k]];
    int ori = 0;
    while (ori < 3 && labels[ori] != Face::U && labels[ori] != Face::D) ++ori;
    int cubie = -1;
    if (ori < 3) {
      for (int c = 0; c < kCornerCount; ++c) {
        if (t.corner_labels[c][0] == labels[ori] && t.corner_labels[c][1] == labels[(ori + 1) % 3] &&
            t.corner_labels[c][2] == labels[(ori + 2) % 3]) {
          cubie = c;
          break;
        }
      }
    }
    if (cubie < 0)
      throw FaceletParseError(Kind::IllegalCubie,
                              "corner slot " + std::to_string(slot) + " matches no corner cubie");
    if (seen_corner[cubie])
      throw FaceletParseError(Kind::IllegalCubie, "corner cubie " + std::to_string(cubie) + " appears twice");
    seen_corner[cubie] = true;
    s.corner_perm[slot] = static_cast<std::uint8_t>(cubie);
    s.corner_ori[slot] = static_cast<std::uint8_t>(ori);
  }

  std::array<bool, kEdgeCount> seen_edge{};
  for (int slot = 0; slot < kEdgeCount; ++slot) {
    const Face a = f.stickers[t.edges[slot][0]];
    const Face b = f.stickers[t.edges[slot][1]];
    int cubie = -1, ori = 0;
    for (int e = 0; e < kEdgeCount && cubie < 0; ++e) {
      if (t.edge_labels[e][0] == a && t.edge_labels[e][1] == b) {
        cubie = e;
        ori = 0;
      } else if (t.edge_labels[e][0] == b && t.edge_labels[e][1] == a) {
        cubie = e;
        ori = 1;
      }
    }
    if (cubie < 0)
      throw FaceletParseError(Kind::IllegalCubie, "edge slot " + std::to_string(slot) + " matches no edge cubie");
    if (seen_edge[cubie])
      throw FaceletParseError(Kind::IllegalCubie, "edge cubie " + std::to_string(cubie) + " appears twice");
    seen_edge[cubie] = true;
    s.edge_perm[slot] = static_cast<std::uint8_t>(cubie);
    s.edge_ori[slot] = static_cast<std::uint8_t>(ori);
  }
  return s;
}

FaceletState facelets_from_string(std::string_view text) {
  using Kind = FaceletParseError::Kind;
  if (text.size() != kStickerCount)
    throw FaceletParseError(Kind::WrongLength,
                            "expected 54 stickers, got " + std::to_string(text.size()));
  FaceletState f;
  std::array<int, kFaceCount> counts{};
  for (int i = 0; i < kStickerCount; ++i) {
    if (!is_face_letter(text[i]))
      throw FaceletParseError(Kind::BadCharacter, "invalid sticker '" + std::string(1, text[i]) +
                                                      "' at offset " + std::to_string(i));
    f.stickers[i] = face_from_letter(text[i]);
    ++counts[static_cast<int>(f.stickers[i])];
  }
  for (int face = 0; face < kFaceCount; ++face) {
    if (counts[face] != 9)
      throw FaceletParseError(Kind::Multiplicity, std::string("face label ") +
                                                      face_letter(static_cast<Face>(face)) + " appears " +
                                                      std::to_string(counts[face]) + " times");
  }
  return f;
}

CubeState parse_state(std::string_view text) {
  CubeState s = cubies_from_facelets(facelets_from_string(text));
  auto violations = validate(s);
  if (!violations.empty()) {
    std::string what = "unreachable configuration:";
    for (const auto& v : violations) what += " " + v.detail + ";";
    throw FaceletParseError(FaceletParseError::Kind::Unreachable, what);
  }
  return s;
}

std::string to_string(const FaceletState& f) {
  std::string out(kStickerCount, ' ');
  for (int i = 0; i < kStickerCount; ++i) out[i] = face_letter(f.stickers[i]);
  return out;
}

std::string format_state(const CubeState& s) { return to_string(to_facelets(s)); }

}  // namespace cubemix
