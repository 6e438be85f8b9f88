#include "doctest.h"
#include "oracles.hpp"

#include "cubemix/cube.hpp"
#include "cubemix/facelet.hpp"
#include "cubemix/walk.hpp"

using namespace cubemix;

namespace {

CubeState random_state(std::uint64_t seed, std::uint64_t i) {
  RngStream rng(seed, i);
  return uniform_state(rng);
}

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  for (const auto& x : v)
    if (x.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("generators match the published quarter-turn tables") {
  for (Move m : all_moves()) {
    CAPTURE(format_move(m));
    CHECK(generator_state(m) == oracle::textbook_move(m));
  }
}

TEST_CASE("generator orders and inverses") {
  for (Move m : all_moves()) {
    CAPTURE(format_move(m));
    const int order = m.amount() == 2 ? 2 : 4;
    CubeState x;
    for (int k = 1; k <= order; ++k) {
      x = apply_move(x, m);
      CHECK((x == CubeState{}) == (k == order));
    }
    CHECK(apply_move(apply_move(CubeState{}, m), m.inverse()) == CubeState{});
    CHECK(inverse(generator_state(m)) == generator_state(m.inverse()));
  }
}

TEST_CASE("compose is associative and inverse is two-sided") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const CubeState a = random_state(1, 3 * i), b = random_state(1, 3 * i + 1), c = random_state(1, 3 * i + 2);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, inverse(a)) == CubeState{});
    CHECK(compose(inverse(a), a) == CubeState{});
    CHECK(compose(a, b) == oracle::textbook_multiply(a, b));
  }
}

TEST_CASE("apply_sequence of a word and its inverse is the identity") {
  RngStream rng(5, 0);
  for (int i = 0; i < 100; ++i) {
    const MoveSequence w = random_word(30, rng);
    CHECK(apply_sequence(apply_sequence(CubeState{}, w), invert_sequence(w)) == CubeState{});
  }
}

TEST_CASE("moves preserve the reachability invariants") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const CubeState x = random_state(2, i);
    REQUIRE(is_valid(x));
    for (Move m : all_moves()) CHECK(is_valid(apply_move(x, m)));
  }
}

TEST_CASE("validate names each broken invariant") {
  CubeState s;
  s.corner_ori[0] = 1;
  CHECK(has_kind(validate(s), Violation::Kind::CornerTwistSum));

  s = CubeState{};
  s.edge_ori[3] = 1;
  CHECK(has_kind(validate(s), Violation::Kind::EdgeFlipSum));

  s = CubeState{};
  std::swap(s.edge_perm[0], s.edge_perm[1]);
  CHECK(has_kind(validate(s), Violation::Kind::PermutationParity));

  s = CubeState{};
  s.corner_perm[0] = 1;
  CHECK(has_kind(validate(s), Violation::Kind::CornerPermutation));

  s = CubeState{};
  s.edge_perm[5] = 0;
  CHECK(has_kind(validate(s), Violation::Kind::EdgePermutation));

  s = CubeState{};
  s.corner_ori[2] = 3;
  CHECK(has_kind(validate(s), Violation::Kind::CornerOrientationRange));

  s = CubeState{};
  s.edge_ori[2] = 2;
  CHECK(has_kind(validate(s), Violation::Kind::EdgeOrientationRange));
}

TEST_CASE("named states") {
  const CubeState sf = named_state(NamedState::Superflip);
  CHECK(is_valid(sf));
  for (int i = 0; i < kEdgeCount; ++i) {
    CHECK(sf.edge_perm[i] == i);
    CHECK(sf.edge_ori[i] == 1);
  }
  CHECK(named_state("checkerboard") == apply_sequence(CubeState{}, parse_moves("U2 D2 F2 B2 L2 R2")));
  CHECK(named_state("origin") == CubeState{});
  CHECK_THROWS_AS(named_state("sixspot"), std::invalid_argument);
  // superflip commutes with every move
  for (Move m : all_moves()) CHECK(compose(sf, generator_state(m)) == compose(generator_state(m), sf));
}

TEST_CASE("relative_state maps the target to the origin") {
  const CubeState t = named_state(NamedState::Checkerboard);
  CHECK(relative_state(t, t) == CubeState{});
  const CubeState x = random_state(3, 0);
  CHECK(compose(t, relative_state(x, t)) == x);
}

TEST_CASE("move parsing") {
  CHECK(parse_moves("R U2 F'") == MoveSequence{Move(Face::R, 1), Move(Face::U, 2), Move(Face::F, 3)});
  CHECK(parse_moves("R1U2F3") == parse_moves("R U2 F'"));
  CHECK(parse_moves("").empty());
  CHECK(format_moves(parse_moves("R U2 F'")) == "R1 U2 F3");
  try {
    parse_moves("R9");
    FAIL("expected a parse error");
  } catch (const MoveParseError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse_moves("R X"), MoveParseError);
  CHECK_THROWS_AS(Move(Face::U, 4), std::invalid_argument);
}

TEST_CASE("pack and unpack round trip") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const CubeState x = random_state(4, i);
    CHECK(unpack(pack(x)) == x);
  }
  CHECK(pack(CubeState{}) != pack(named_state(NamedState::Superflip)));
}

TEST_CASE("facelet model agrees with the cubie engine on random words") {
  RngStream rng(6, 0);
  for (int i = 0; i < 1000; ++i) {
    const MoveSequence w = random_word(static_cast<int>(rng.uniform_below(41)), rng);
    const CubeState x = apply_sequence(CubeState{}, w);
    const FaceletState f = apply_facelet_sequence(FaceletState::solved(), w);
    REQUIRE(to_facelets(x) == f);
    REQUIRE(cubies_from_facelets(f) == x);
  }
}

TEST_CASE("facelet strings") {
  const std::string solved = "UUUUUUUUURRRRRRRRRFFFFFFFFFDDDDDDDDDLLLLLLLLLBBBBBBBBB";
  CHECK(format_state(CubeState{}) == solved);
  CHECK(parse_state(solved) == CubeState{});
  for (std::uint64_t i = 0; i < 200; ++i) {
    const CubeState x = random_state(7, i);
    CHECK(parse_state(format_state(x)) == x);
  }

  auto kind_of = [](const std::string& s) {
    try {
      parse_state(s);
    } catch (const FaceletParseError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  using K = FaceletParseError::Kind;
  CHECK(kind_of(solved.substr(1)) == static_cast<int>(K::WrongLength));
  std::string bad = solved;
  bad[0] = 'X';
  CHECK(kind_of(bad) == static_cast<int>(K::BadCharacter));
  bad = solved;
  bad[0] = 'R';
  CHECK(kind_of(bad) == static_cast<int>(K::Multiplicity));
  // two corners twisted the same way: legal-looking but unreachable
  CubeState tw;
  tw.corner_ori[0] = 1;
  tw.corner_ori[1] = 1;
  CHECK(kind_of(format_state(tw)) == static_cast<int>(K::Unreachable));
  // URF corner showing R twice
  bad = solved;
  std::swap(bad[8], bad[10]);
  CHECK(kind_of(bad) == static_cast<int>(K::IllegalCubie));
}
