#ifndef KELLY_GAME_HPP
#define KELLY_GAME_HPP

#include <vector>

#include "kelly/digraph.hpp"

namespace kelly {

/// Position in the cops-and-(invisible, inert)-robber game: where the cops
/// stand and which vertices might still hold the robber.  Stored states
/// keep the two sets disjoint.
struct GameState {
    std::vector<VertexId> cops;
    std::vector<VertexId> contaminated;
};

/// One helicopter move: the cop set becomes new_cops in a single step.  A
/// robber on a vertex a cop is landing on flees along directed paths that
/// avoid the cops present throughout the move (cops kept in both the old
/// and new placement); robbers not threatened stay put.
GameState resolve_move(const Digraph& g, const GameState& state,
                       const std::vector<VertexId>& new_cops, int cop_budget);

inline constexpr int kGameDefaultMaxN = 8;

/// Least k such that k cops starting from no cops and full contamination
/// can always clear the graph.  The contamination update is deterministic,
/// so a winning strategy is a path in the state graph; the search walks it
/// breadth-first with visited-state pruning.
int min_cops(const Digraph& g, int max_n = kGameDefaultMaxN);

} // namespace kelly

#endif
