#ifndef KELLY_TESTS_HELPERS_HPP
#define KELLY_TESTS_HELPERS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "kelly/digraph.hpp"
#include "kelly/genlab.hpp"

namespace kelly::testing {

inline Digraph relabel(const Digraph& g, const std::map<VertexId, VertexId>& pi) {
    std::vector<VertexId> vs;
    for (VertexId v : g.vertices())
        vs.push_back(pi.at(v));
    std::vector<Arc> arcs;
    for (const auto& [u, v] : g.arcs())
        arcs.push_back({pi.at(u), pi.at(v)});
    return Digraph(std::move(vs), std::move(arcs));
}

inline Digraph random_relabel(const Digraph& g, SplitMix64& rng) {
    std::vector<VertexId> ids = g.vertices();
    std::vector<VertexId> shuffled = ids;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
    std::map<VertexId, VertexId> pi;
    for (std::size_t i = 0; i < ids.size(); ++i)
        pi[ids[i]] = shuffled[i];
    return relabel(g, pi);
}

inline Digraph directed_cycle(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        arcs.push_back({i, (i + 1) % n});
    return Digraph::from_arcs(arcs);
}

inline Digraph bidirected_cycle(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i) {
        arcs.push_back({i, (i + 1) % n});
        arcs.push_back({(i + 1) % n, i});
    }
    return Digraph::from_arcs(arcs);
}

inline Digraph bidirected_path(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i + 1 < n; ++i) {
        arcs.push_back({i, i + 1});
        arcs.push_back({i + 1, i});
    }
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i)
        vs[i] = i;
    return Digraph(vs, arcs);
}

inline Digraph bidirected_complete(int n) {
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v)
                arcs.push_back({u, v});
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i)
        vs[i] = i;
    return Digraph(vs, arcs);
}

inline Digraph directed_path(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i + 1 < n; ++i)
        arcs.push_back({i, i + 1});
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i)
        vs[i] = i;
    return Digraph(vs, arcs);
}

/// All ordered reachability pairs (u,v), u != v, via neighbor expansion;
/// independent of reachable_set.
inline std::set<std::pair<VertexId, VertexId>> reach_pairs(const Digraph& g) {
    std::set<std::pair<VertexId, VertexId>> pairs;
    for (VertexId s : g.vertices()) {
        std::set<VertexId> seen{s};
        std::vector<VertexId> stack{s};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.out_neighbors(v))
                if (seen.insert(w).second)
                    stack.push_back(w);
        }
        for (VertexId t : seen)
            if (t != s)
                pairs.insert({s, t});
    }
    return pairs;
}

} // namespace kelly::testing

#endif
