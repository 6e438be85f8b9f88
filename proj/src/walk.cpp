#include "cubemix/walk.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace cubemix {
namespace {

template <std::size_t N>
void shuffle(std::array<std::uint8_t, N>& a, RngStream& rng) {
  for (std::size_t i = N - 1; i > 0; --i) std::swap(a[i], a[rng.uniform_below(i + 1)]);
}

}  // namespace

Move random_move(RngStream& rng) { return Move::from_index(static_cast<int>(rng.uniform_below(kMoveCount))); }

CubeState walk(const CubeState& start, int steps, RngStream& rng) {
  if (steps < 0) throw std::invalid_argument("walk: negative step count");
  CubeState x = start;
  for (int i = 0; i < steps; ++i) x = apply_move(x, random_move(rng));
  return x;
}

std::vector<CubeState> walk_trajectory(const CubeState& start, int steps, RngStream& rng) {
  if (steps < 0) throw std::invalid_argument("walk: negative step count");
  std::vector<CubeState> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(start);
  for (int i = 0; i < steps; ++i) out.push_back(apply_move(out.back(), random_move(rng)));
  return out;
}

MoveSequence random_word(int length, RngStream& rng) {
  if (length < 0) throw std::invalid_argument("random_word: negative length");
  MoveSequence s;
  s.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) s.push_back(random_move(rng));
  return s;
}

CubeState uniform_state(RngStream& rng) {
  CubeState s;
  shuffle(s.edge_perm, rng);
  shuffle(s.corner_perm, rng);
  if (permutation_parity(s.corner_perm) != permutation_parity(s.edge_perm))
    std::swap(s.corner_perm[0], s.corner_perm[1]);

  int twist = 0;
  for (int i = 0; i < kCornerCount - 1; ++i) {
    s.corner_ori[i] = static_cast<std::uint8_t>(rng.uniform_below(3));
    twist += s.corner_ori[i];
  }
  s.corner_ori[kCornerCount - 1] = static_cast<std::uint8_t>((3 - twist % 3) % 3);

  int flip = 0;
  for (int i = 0; i < kEdgeCount - 1; ++i) {
    s.edge_ori[i] = static_cast<std::uint8_t>(rng.uniform_below(2));
    flip += s.edge_ori[i];
  }
  s.edge_ori[kEdgeCount - 1] = static_cast<std::uint8_t>(flip & 1);
  return s;
}

unsigned __int128 group_order() {
  unsigned __int128 n = 1;
  for (int i = 2; i <= 8; ++i) n *= i;
  for (int i = 2; i <= 12; ++i) n *= i;
  for (int i = 0; i < 7; ++i) n *= 3;
  for (int i = 0; i < 11; ++i) n *= 2;
  return n / 2;
}

std::string group_order_string() {
  unsigned __int128 n = group_order();
  std::string digits;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
    n /= 10;
  } while (n != 0);
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace cubemix
