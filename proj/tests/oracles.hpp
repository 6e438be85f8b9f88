// Independent reference computations used by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "cubemix/cube.hpp"
#include "cubemix/facelet.hpp"

namespace oracle {

// Quarter-turn generators as published in the two-phase solver literature,
// typed in by hand: corner/edge "replaced by" lists and orientations.
// Slot order: URF UFL ULB UBR DFR DLF DBL DRB / UR UF UL UB DR DF DL DB FR FL BL BR.
enum C : std::uint8_t { URF, UFL, ULB, UBR, DFR, DLF, DBL, DRB };
enum E : std::uint8_t { UR, UF, UL, UB, DR, DF, DL, DB, FR, FL, BL, BR };

inline cubemix::CubeState textbook_quarter_turn(cubemix::Face f) {
  using cubemix::CubeState;
  switch (f) {
    case cubemix::Face::U:
      return CubeState{{UBR, URF, UFL, ULB, DFR, DLF, DBL, DRB}, {0, 0, 0, 0, 0, 0, 0, 0},
                       {UB, UR, UF, UL, DR, DF, DL, DB, FR, FL, BL, BR}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};
    case cubemix::Face::R:
      return CubeState{{DFR, UFL, ULB, URF, DRB, DLF, DBL, UBR}, {2, 0, 0, 1, 1, 0, 0, 2},
                       {FR, UF, UL, UB, BR, DF, DL, DB, DR, FL, BL, UR}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};
    case cubemix::Face::F:
      return CubeState{{UFL, DLF, ULB, UBR, URF, DFR, DBL, DRB}, {1, 2, 0, 0, 2, 1, 0, 0},
                       {UR, FL, UL, UB, DR, FR, DL, DB, UF, DF, BL, BR}, {0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0}};
    case cubemix::Face::D:
      return CubeState{{URF, UFL, ULB, UBR, DLF, DBL, DRB, DFR}, {0, 0, 0, 0, 0, 0, 0, 0},
                       {UR, UF, UL, UB, DF, DL, DB, DR, FR, FL, BL, BR}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};
    case cubemix::Face::L:
      return CubeState{{URF, ULB, DBL, UBR, DFR, UFL, DLF, DRB}, {0, 1, 2, 0, 0, 2, 1, 0},
                       {UR, UF, BL, UB, DR, DF, FL, DB, FR, UL, DL, BR}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};
    case cubemix::Face::B:
      return CubeState{{URF, UFL, UBR, DRB, DFR, DLF, ULB, DBL}, {0, 0, 1, 2, 0, 0, 2, 1},
                       {UR, UF, UL, BR, DR, DF, DL, BL, FR, FL, UB, DB}, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1}};
  }
  return {};
}

// Naive textbook product: apply b after a, written slot by slot.
inline cubemix::CubeState textbook_multiply(const cubemix::CubeState& a, const cubemix::CubeState& b) {
  cubemix::CubeState out;
  for (int s = 0; s < cubemix::kCornerCount; ++s) {
    out.corner_perm[s] = a.corner_perm[b.corner_perm[s]];
    out.corner_ori[s] = static_cast<std::uint8_t>((a.corner_ori[b.corner_perm[s]] + b.corner_ori[s]) % 3);
  }
  for (int s = 0; s < cubemix::kEdgeCount; ++s) {
    out.edge_perm[s] = a.edge_perm[b.edge_perm[s]];
    out.edge_ori[s] = static_cast<std::uint8_t>((a.edge_ori[b.edge_perm[s]] + b.edge_ori[s]) % 2);
  }
  return out;
}

inline cubemix::CubeState textbook_move(cubemix::Move m) {
  const cubemix::CubeState q = textbook_quarter_turn(m.face());
  cubemix::CubeState out;
  for (int i = 0; i < m.amount(); ++i) out = textbook_multiply(out, q);
  return out;
}

// Facelet states packed at 3 bits per non-center sticker.
struct Packed {
  std::array<std::uint64_t, 3> w{};
  friend bool operator==(const Packed&, const Packed&) = default;
  friend auto operator<=>(const Packed&, const Packed&) = default;
};

inline Packed pack_facelets(const cubemix::FaceletState& f) {
  Packed p;
  int bit = 0;
  for (int i = 0; i < cubemix::kStickerCount; ++i) {
    if (i % 9 == 4) continue;
    p.w[bit / 64] |= static_cast<std::uint64_t>(f.stickers[i]) << (bit % 64);
    bit += 3;
    if (bit % 64 == 63) bit += 1;  // keep 3-bit fields inside one word
  }
  return p;
}

// Layer sizes of the facelet-model Cayley graph around the solved cube.
inline std::vector<std::uint64_t> facelet_bfs_layers(int depth) {
  using cubemix::FaceletState;
  std::vector<std::uint64_t> counts{1};
  std::vector<FaceletState> frontier{FaceletState::solved()};
  std::vector<Packed> prev, cur{pack_facelets(FaceletState::solved())};
  for (int d = 1; d <= depth; ++d) {
    std::vector<std::pair<Packed, std::uint32_t>> cand;
    cand.reserve(frontier.size() * cubemix::kMoveCount);
    for (std::uint32_t i = 0; i < frontier.size(); ++i)
      for (cubemix::Move m : cubemix::all_moves())
        cand.emplace_back(pack_facelets(cubemix::apply_facelet_move(frontier[i], m)), i * cubemix::kMoveCount + m.index());
    std::sort(cand.begin(), cand.end());
    std::vector<Packed> next;
    std::vector<FaceletState> next_frontier;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (k > 0 && cand[k].first == cand[k - 1].first) continue;
      const Packed& p = cand[k].first;
      if (std::binary_search(cur.begin(), cur.end(), p) || std::binary_search(prev.begin(), prev.end(), p)) continue;
      next.push_back(p);
      if (d < depth) {
        const std::uint32_t code = cand[k].second;
        next_frontier.push_back(cubemix::apply_facelet_move(frontier[code / cubemix::kMoveCount],
                                                            cubemix::Move::from_index(static_cast<int>(code % cubemix::kMoveCount))));
      }
    }
    counts.push_back(next.size());
    prev = std::move(cur);
    cur = std::move(next);
    frontier = std::move(next_frontier);
  }
  return counts;
}

// Ball sizes in the 18-move metric, radius 0..6.
inline constexpr std::array<std::uint64_t, 7> kKnownLayers = {1, 18, 243, 3240, 43239, 574908, 7618438};

}  // namespace oracle
