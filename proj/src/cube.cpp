#include "cubemix/cube.hpp"

#include <cctype>

#include "cubemix/facelet.hpp"

namespace cubemix {
namespace {

std::array<CubeState, kMoveCount> derive_generators() {
  std::array<CubeState, kMoveCount> gens{};
  for (Move m : all_moves())
    gens[m.index()] = cubies_from_facelets(apply_facelet_move(FaceletState::solved(), m));
  return gens;
}

int face_index_of(char c) {
  switch (c) {
    case 'U': return 0;
    case 'R': return 1;
    case 'F': return 2;
    case 'D': return 3;
    case 'L': return 4;
    case 'B': return 5;
    default: return -1;
  }
}

}  // namespace

char face_letter(Face f) {
  static constexpr char kLetters[] = {'U', 'R', 'F', 'D', 'L', 'B'};
  return kLetters[static_cast<int>(f)];
}

Move::Move(Face face, int amount) : face_(face), amount_(static_cast<std::uint8_t>(amount)) {
  if (amount < 1 || amount > 3) throw std::invalid_argument("move amount must be 1, 2 or 3");
}

Move Move::from_index(int index) {
  if (index < 0 || index >= kMoveCount) throw std::out_of_range("move index out of range");
  return Move(static_cast<Face>(index / 3), index % 3 + 1);
}

const std::array<Move, kMoveCount>& all_moves() {
  static const std::array<Move, kMoveCount> moves = [] {
    std::array<Move, kMoveCount> out{};
    for (int i = 0; i < kMoveCount; ++i) out[i] = Move::from_index(i);
    return out;
  }();
  return moves;
}

MoveSequence invert_sequence(const MoveSequence& s) {
  MoveSequence out(s.rbegin(), s.rend());
  for (Move& m : out) m = m.inverse();
  return out;
}

CubeState compose(const CubeState& a, const CubeState& b) {
  CubeState out;
  for (int s = 0; s < kCornerCount; ++s) {
    const int from = b.corner_perm[s];
    out.corner_perm[s] = a.corner_perm[from];
    out.corner_ori[s] = static_cast<std::uint8_t>((a.corner_ori[from] + b.corner_ori[s]) % 3);
  }
  for (int s = 0; s < kEdgeCount; ++s) {
    const int from = b.edge_perm[s];
    out.edge_perm[s] = a.edge_perm[from];
    out.edge_ori[s] = static_cast<std::uint8_t>((a.edge_ori[from] + b.edge_ori[s]) & 1);
  }
  return out;
}

CubeState inverse(const CubeState& x) {
  CubeState out;
  for (int s = 0; s < kCornerCount; ++s) {
    out.corner_perm[x.corner_perm[s]] = static_cast<std::uint8_t>(s);
    out.corner_ori[x.corner_perm[s]] = static_cast<std::uint8_t>((3 - x.corner_ori[s]) % 3);
  }
  for (int s = 0; s < kEdgeCount; ++s) {
    out.edge_perm[x.edge_perm[s]] = static_cast<std::uint8_t>(s);
    out.edge_ori[x.edge_perm[s]] = x.edge_ori[s];
  }
  return out;
}

const CubeState& generator_state(Move m) {
  static const std::array<CubeState, kMoveCount> gens = derive_generators();
  return gens[m.index()];
}

CubeState apply_move(const CubeState& state, Move m) { return compose(state, generator_state(m)); }

CubeState apply_sequence(const CubeState& state, const MoveSequence& s) {
  CubeState out = state;
  for (Move m : s) out = apply_move(out, m);
  return out;
}

CubeState relative_state(const CubeState& x, const CubeState& target) { return compose(inverse(target), x); }

CubeState named_state(NamedState name) {
  switch (name) {
    case NamedState::Origin:
      return CubeState{};
    case NamedState::Superflip: {
      CubeState s;
      s.edge_ori.fill(1);
      return s;
    }
    case NamedState::Checkerboard:
      return apply_sequence(CubeState{}, parse_moves("U2 D2 F2 B2 L2 R2"));
  }
  throw std::invalid_argument("unknown named state");
}

CubeState named_state(std::string_view name) {
  if (name == "origin") return named_state(NamedState::Origin);
  if (name == "superflip") return named_state(NamedState::Superflip);
  if (name == "checkerboard") return named_state(NamedState::Checkerboard);
  throw std::invalid_argument("unknown named state '" + std::string(name) + "'");
}

std::vector<Violation> validate(const CubeState& state) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;

  bool corners_ok = true;
  std::array<bool, kCornerCount> seen_c{};
  for (auto c : state.corner_perm) {
    if (c >= kCornerCount || seen_c[c]) corners_ok = false;
    else seen_c[c] = true;
  }
  if (!corners_ok) out.push_back({Kind::CornerPermutation, "corner_perm is not a permutation of 0..7"});

  bool edges_ok = true;
  std::array<bool, kEdgeCount> seen_e{};
  for (auto e : state.edge_perm) {
    if (e >= kEdgeCount || seen_e[e]) edges_ok = false;
    else seen_e[e] = true;
  }
  if (!edges_ok) out.push_back({Kind::EdgePermutation, "edge_perm is not a permutation of 0..11"});

  int twist = 0;
  bool twist_range = true;
  for (auto o : state.corner_ori) {
    if (o > 2) twist_range = false;
    twist += o;
  }
  if (!twist_range) out.push_back({Kind::CornerOrientationRange, "corner twist outside 0..2"});
  else if (twist % 3 != 0)
    out.push_back({Kind::CornerTwistSum, "corner twist sum is " + std::to_string(twist % 3) + " mod 3"});

  int flip = 0;
  bool flip_range = true;
  for (auto o : state.edge_ori) {
    if (o > 1) flip_range = false;
    flip += o;
  }
  if (!flip_range) out.push_back({Kind::EdgeOrientationRange, "edge flip outside 0..1"});
  else if (flip % 2 != 0) out.push_back({Kind::EdgeFlipSum, "edge flip sum is odd"});

  if (corners_ok && edges_ok &&
      permutation_parity(state.corner_perm) != permutation_parity(state.edge_perm))
    out.push_back({Kind::PermutationParity, "corner and edge permutation parities differ"});
  return out;
}

MoveSequence parse_moves(std::string_view text) {
  MoveSequence out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int face = face_index_of(c);
    if (face < 0) throw MoveParseError(i, std::string("unknown face '") + c + "'");
    ++i;
    int amount = 1;
    if (i < text.size()) {
      const char suffix = text[i];
      if (suffix == '\'') {
        amount = 3;
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(suffix))) {
        if (suffix < '1' || suffix > '3') throw MoveParseError(i, std::string("invalid amount '") + suffix + "'");
        amount = suffix - '0';
        ++i;
      }
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && face_index_of(text[i]) < 0)
      throw MoveParseError(i, std::string("unexpected character '") + text[i] + "'");
    out.emplace_back(static_cast<Face>(face), amount);
  }
  return out;
}

std::string format_move(Move m) {
  return std::string{face_letter(m.face()), static_cast<char>('0' + m.amount())};
}

std::string format_moves(const MoveSequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += format_move(s[i]);
  }
  return out;
}

StateKey pack(const CubeState& s) {
  StateKey k;
  for (int i = 0; i < kCornerCount; ++i)
    k.hi |= static_cast<std::uint64_t>(s.corner_perm[i] | (s.corner_ori[i] << 3)) << (5 * i);
  for (int i = 0; i < kEdgeCount; ++i)
    k.lo |= static_cast<std::uint64_t>(s.edge_perm[i] | (s.edge_ori[i] << 4)) << (5 * i);
  return k;
}

CubeState unpack(StateKey key) {
  CubeState s;
  for (int i = 0; i < kCornerCount; ++i) {
    const auto v = static_cast<std::uint8_t>((key.hi >> (5 * i)) & 31);
    s.corner_perm[i] = v & 7;
    s.corner_ori[i] = v >> 3;
  }
  for (int i = 0; i < kEdgeCount; ++i) {
    const auto v = static_cast<std::uint8_t>((key.lo >> (5 * i)) & 31);
    s.edge_perm[i] = v & 15;
    s.edge_ori[i] = v >> 4;
  }
  return s;
}

}  // namespace cubemix
