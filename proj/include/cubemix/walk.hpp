// The scrambling chain: iid uniform generators applied to a starting state,
// plus exact sampling from its uniform stationary law.
#pragma once

#include <string>
#include <vector>

#include "cubemix/cube.hpp"
#include "cubemix/rng.hpp"

namespace cubemix {

Move random_move(RngStream& rng);

/// X_n of the chain started at `start`. Moves are applied raw, including
/// immediate undos.
CubeState walk(const CubeState& start, int steps, RngStream& rng);
/// X_0 .. X_n.
std::vector<CubeState> walk_trajectory(const CubeState& start, int steps, RngStream& rng);
/// The word a walk would apply, for printing scrambles.
MoveSequence random_word(int length, RngStream& rng);

/// Exactly uniform over the reachable group, by direct construction.
CubeState uniform_state(RngStream& rng);

/// |group| = 8! * 12! * 3^7 * 2^11 / 2, as a decimal string.
std::string group_order_string();
unsigned __int128 group_order();

}  // namespace cubemix
