#include <set>

#include "doctest.h"

#include "cubemix/rng.hpp"
#include "cubemix/walk.hpp"

using namespace cubemix;

namespace {

// Chi-square statistic of observed counts against equal expected counts.
template <class Counts>
double chi_square(const Counts& counts, double total) {
  const double expected = total / static_cast<double>(counts.size());
  double s = 0.0;
  for (auto c : counts) s += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return s;
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == Philox4x32Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Philox4x32Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Philox4x32Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
  CHECK(a.position() == 1000);
}

TEST_CASE("split children do not depend on the parent position") {
  RngStream p(9, 1);
  const RngStream before = p.split(3);
  p.next_u64();
  RngStream after = p.split(3);
  RngStream b2 = before;
  for (int i = 0; i < 10; ++i) CHECK(b2.next_u64() == after.next_u64());
  CHECK(p.split(3).stream_id() != p.split(4).stream_id());
}

TEST_CASE("sample stream ids keep purpose, step and index apart") {
  std::set<std::uint64_t> ids;
  for (auto purpose : {StreamPurpose::Walk, StreamPurpose::Stationary, StreamPurpose::Bootstrap})
    for (int step : {-1, 0, 1, 52})
      for (std::uint64_t idx : {0ULL, 1ULL, 999999ULL}) ids.insert(sample_stream_id(purpose, step, idx));
  CHECK(ids.size() == 3 * 4 * 3);
}

TEST_CASE("uniform_below is unbiased") {
  RngStream rng(11, 0);
  std::array<int, 18> counts{};
  const int n = 180000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_below(18)];
  CHECK(chi_square(counts, n) < 40.79);  // df 17, p = 0.001

  std::array<int, 3> small{};
  for (int i = 0; i < 30000; ++i) ++small[rng.uniform_below(3)];
  CHECK(chi_square(small, 30000) < 13.82);

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("walk composition law") {
  const CubeState start = apply_sequence(CubeState{}, parse_moves("R U F"));
  RngStream one(3, 5);
  const CubeState whole = walk(start, 17, one);
  RngStream two(3, 5);
  const CubeState mid = walk(start, 9, two);
  CHECK(walk(mid, 8, two) == whole);

  RngStream t(3, 5);
  const auto traj = walk_trajectory(start, 17, t);
  REQUIRE(traj.size() == 18);
  CHECK(traj.front() == start);
  CHECK(traj.back() == whole);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    bool one_move = false;
    for (Move m : all_moves()) one_move |= apply_move(traj[i - 1], m) == traj[i];
    CHECK(one_move);
  }
  RngStream neg(1, 1);
  CHECK_THROWS_AS(walk(start, -1, neg), std::invalid_argument);
}

TEST_CASE("walk of length n equals applying random_word(n)") {
  RngStream a(8, 2), b(8, 2);
  CHECK(walk(CubeState{}, 25, a) == apply_sequence(CubeState{}, random_word(25, b)));
}

TEST_CASE("uniform_state covers the group evenly") {
  const int n = 60000;
  std::array<int, 8> corner_slot0{};
  std::array<int, 3> twist0{};
  std::array<int, 12> edge_slot0{};
  std::array<int, 2> flip0{}, parity{};
  for (int i = 0; i < n; ++i) {
    RngStream rng(21, static_cast<std::uint64_t>(i));
    const CubeState x = uniform_state(rng);
    REQUIRE(is_valid(x));
    ++corner_slot0[x.corner_perm[0]];
    ++twist0[x.corner_ori[7]];
    ++edge_slot0[x.edge_perm[11]];
    ++flip0[x.edge_ori[11]];
    ++parity[permutation_parity(x.corner_perm)];
  }
  CHECK(chi_square(corner_slot0, n) < 24.32);
  CHECK(chi_square(twist0, n) < 13.82);
  CHECK(chi_square(edge_slot0, n) < 31.26);
  CHECK(chi_square(flip0, n) < 10.83);
  CHECK(chi_square(parity, n) < 10.83);
}

TEST_CASE("birthday test: uniform states do not collide") {
  // 10^5 draws from 4.3e19 states collide with probability about 1e-10.
  std::vector<StateKey> keys;
  RngStream rng(33, 0);
  for (int i = 0; i < 100000; ++i) keys.push_back(pack(uniform_state(rng)));
  std::sort(keys.begin(), keys.end());
  CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
}

TEST_CASE("group order") {
  CHECK(group_order_string() == "43252003274489856000");
}
