#include "kelly/game.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>

namespace kelly {

namespace {

std::uint64_t to_mask(const DenseDigraph& d, const std::vector<VertexId>& vs) {
    std::uint64_t mask = 0;
    for (VertexId v : vs) {
        int i = d.index_of(v);
        if (i < 0)
            throw DomainError("unknown vertex " + std::to_string(v));
        mask |= std::uint64_t{1} << i;
    }
    return mask;
}

std::vector<VertexId> from_mask(const DenseDigraph& d, std::uint64_t mask) {
    std::vector<VertexId> vs;
    while (mask) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        vs.push_back(d.ids[i]);
    }
    return vs;
}

std::uint64_t reach_avoiding(const DenseDigraph& d, std::uint64_t sources, std::uint64_t blocked) {
    std::uint64_t reached = sources & ~blocked;
    std::uint64_t frontier = reached;
    while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t f = frontier;
        while (f) {
            int v = std::countr_zero(f);
            f &= f - 1;
            next |= d.out_mask[v];
        }
        next &= ~blocked;
        frontier = next & ~reached;
        reached |= frontier;
    }
    return reached;
}

std::uint64_t contamination_after(const DenseDigraph& d, std::uint64_t cops,
                                  std::uint64_t contaminated, std::uint64_t new_cops) {
    std::uint64_t threatened = contaminated & new_cops;
    std::uint64_t persisting = cops & new_cops;
    std::uint64_t fled = threatened ? reach_avoiding(d, threatened, persisting) : 0;
    return (contaminated & ~new_cops) | (fled & ~new_cops);
}

} // namespace

GameState resolve_move(const Digraph& g, const GameState& state,
                       const std::vector<VertexId>& new_cops, int cop_budget) {
    if (static_cast<int>(new_cops.size()) > cop_budget)
        throw DomainError("resolve_move: cop budget exceeded");
    DenseDigraph d(g);
    std::uint64_t cops = to_mask(d, state.cops);
    std::uint64_t cont = to_mask(d, state.contaminated);
    std::uint64_t next_cops = to_mask(d, new_cops);
    std::uint64_t next_cont = contamination_after(d, cops, cont, next_cops);
    GameState result;
    result.cops = from_mask(d, next_cops);
    result.contaminated = from_mask(d, next_cont);
    return result;
}

namespace {

// Winning move sequences may be assumed history-free on (cops,
// contamination) states, so a breadth-first search with a visited set
// decides each cop count exactly.
bool cops_win(const DenseDigraph& d, int k) {
    const int n = static_cast<int>(d.size());
    const std::uint64_t everyone = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

    // All cop placements of size <= k, in deterministic order.
    std::vector<std::uint64_t> placements;
    for (std::uint64_t mask = 0; mask <= everyone; ++mask)
        if (std::popcount(mask) <= k)
            placements.push_back(mask);

    auto key = [n](std::uint64_t cops, std::uint64_t cont) {
        return cops << n | cont;
    };
    std::unordered_set<std::uint64_t> visited;
    std::queue<std::pair<std::uint64_t, std::uint64_t>> frontier;
    frontier.push({0, everyone});
    visited.insert(key(0, everyone));
    while (!frontier.empty()) {
        auto [cops, cont] = frontier.front();
        frontier.pop();
        if (cont == 0)
            return true;
        for (std::uint64_t next_cops : placements) {
            std::uint64_t next_cont = contamination_after(d, cops, cont, next_cops);
            if (next_cont & next_cops)
                throw InternalError("min_cops: contaminated vertex under a standing cop");
            std::uint64_t k2 = key(next_cops, next_cont);
            if (visited.insert(k2).second)
                frontier.push({next_cops, next_cont});
        }
    }
    return false;
}

} // namespace

int min_cops(const Digraph& g, int max_n) {
    const int n = static_cast<int>(g.vertex_count());
    if (n > max_n || n > 16)
        throw CapacityError("min_cops: " + std::to_string(n) + " vertices exceeds bound " +
                            std::to_string(std::min(max_n, 16)));
    if (n == 0)
        return 0;
    DenseDigraph d(g);
    for (int k = 0; k <= n; ++k)
        if (cops_win(d, k))
            return k;
    throw InternalError("min_cops: no winning cop count up to n");
}

} // namespace kelly
