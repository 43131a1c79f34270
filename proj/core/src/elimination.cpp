#include "kelly/elimination.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

namespace kelly {

Digraph eliminate_vertex(const Digraph& g, VertexId v) {
    g.require_vertex(v);
    std::vector<VertexId> ins = g.in_neighbors(v);
    std::vector<VertexId> outs = g.out_neighbors(v);
    std::vector<VertexId> vs;
    for (VertexId w : g.vertices())
        if (w != v)
            vs.push_back(w);
    std::vector<Arc> arcs;
    for (const auto& [a, b] : g.arcs())
        if (a != v && b != v)
            arcs.push_back({a, b});
    for (VertexId u : ins)
        for (VertexId w : outs)
            if (u != w)
                arcs.push_back({u, w});
    return Digraph(std::move(vs), std::move(arcs));
}

EliminationOrdering ordering_width(const Digraph& g, const std::vector<VertexId>& order) {
    std::vector<VertexId> sorted(order);
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g.vertices())
        throw DomainError("ordering_width: order is not a permutation of the vertex set");
    EliminationOrdering result;
    result.order = order;
    Digraph current = g;
    for (VertexId v : order) {
        std::vector<VertexId> supp = current.out_neighbors(v);
        result.width = std::max(result.width, static_cast<int>(supp.size()));
        result.supports.push_back(std::move(supp));
        current = eliminate_vertex(current, v);
    }
    return result;
}

namespace {

// Reachability closure used by supp: targets reachable from start by a
// directed path whose internal vertices lie inside `allowed`.
std::uint64_t masked_reach(const DenseDigraph& d, int start, std::uint64_t allowed) {
    std::uint64_t reached = d.out_mask[start];
    std::uint64_t frontier = reached & allowed;
    while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t f = frontier;
        while (f) {
            int v = std::countr_zero(f);
            f &= f - 1;
            next |= d.out_mask[v];
        }
        std::uint64_t fresh = next & ~reached;
        reached |= fresh;
        frontier = fresh & allowed;
    }
    return reached;
}

} // namespace

std::vector<VertexId> support_set(const Digraph& g, VertexId v,
                                  const std::vector<VertexId>& eliminated) {
    g.require_vertex(v);
    DenseDigraph d(g);
    std::uint64_t elim = 0;
    for (VertexId w : eliminated) {
        g.require_vertex(w);
        if (w == v)
            throw DomainError("support_set: v may not be in the eliminated set");
        elim |= std::uint64_t{1} << d.index_of(w);
    }
    int vi = d.index_of(v);
    std::uint64_t reach = masked_reach(d, vi, elim);
    reach &= ~(elim | (std::uint64_t{1} << vi));
    std::vector<VertexId> supp;
    while (reach) {
        int w = std::countr_zero(reach);
        reach &= reach - 1;
        supp.push_back(d.ids[w]);
    }
    return supp;
}

KellyWidthResult exact_kelly_width(const Digraph& g, int max_n) {
    const int n = static_cast<int>(g.vertex_count());
    if (n > max_n || n > 25)
        throw CapacityError("exact_kelly_width: " + std::to_string(n) +
                            " vertices exceeds bound " + std::to_string(std::min(max_n, 25)));
    if (n == 0)
        return {};

    DenseDigraph d(g);
    auto supp_size = [&](int v, std::uint64_t elim) {
        std::uint64_t reach = masked_reach(d, v, elim);
        reach &= ~(elim | (std::uint64_t{1} << v));
        return std::popcount(reach);
    };

    // Q[S] = least achievable max out-degree when the vertices of S are
    // eliminated first (in the best internal order); the vertex recorded in
    // choice[S] is eliminated last within S.
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::uint8_t> q(full, 0);
    std::vector<std::int8_t> choice(full, -1);
    for (std::size_t s = 1; s < full; ++s) {
        int best = std::numeric_limits<int>::max();
        int best_v = -1;
        std::uint64_t bits = s;
        while (bits) {
            int v = std::countr_zero(bits);
            bits &= bits - 1;
            std::uint64_t rest = s & ~(std::uint64_t{1} << v);
            int cost = std::max<int>(q[rest], supp_size(v, rest));
            if (cost < best) {
                best = cost;
                best_v = v;
            }
        }
        q[s] = static_cast<std::uint8_t>(best);
        choice[s] = static_cast<std::int8_t>(best_v);
    }

    KellyWidthResult result;
    result.width = q[full - 1] + 1;
    std::vector<VertexId> order(n);
    std::size_t s = full - 1;
    for (int pos = n - 1; pos >= 0; --pos) {
        int v = choice[s];
        order[pos] = d.ids[v];
        s &= ~(std::size_t{1} << v);
    }
    result.ordering = ordering_width(g, order);
    return result;
}

RecognitionResult recognize_partial_k(const Digraph& g, int k) {
    if (k != 0 && k != 1)
        throw DomainError("recognize_partial_k: greedy recognition is exact only for k in {0,1}");
    RecognitionResult result;
    Digraph current = g;
    EliminationOrdering ordering;
    std::vector<MinorOperation> peeled;
    bool progress = true;
    while (progress && !current.empty()) {
        progress = false;
        for (VertexId v : current.vertices()) {
            std::vector<VertexId> out = current.out_neighbors(v);
            if (static_cast<int>(out.size()) > k)
                continue;
            ordering.order.push_back(v);
            ordering.width = std::max(ordering.width, static_cast<int>(out.size()));
            if (out.empty())
                peeled.push_back({OpKind::DeleteVertex, {v}});
            else
                peeled.push_back({OpKind::OutContract, {v, out[0]}});
            ordering.supports.push_back(std::move(out));
            current = apply(current, peeled.back());
            progress = true;
            break; // smallest-id vertex first; rescan after each peel
        }
    }
    result.residual = {current, std::move(peeled)};
    if (current.empty()) {
        result.recognized = true;
        result.ordering = std::move(ordering);
    }
    return result;
}

} // namespace kelly
