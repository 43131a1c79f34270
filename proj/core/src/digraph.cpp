#include "kelly/digraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace kelly {

namespace {

std::string id_str(VertexId v) { return std::to_string(v); }

std::string arc_str(VertexId u, VertexId v) {
    return "(" + id_str(u) + "," + id_str(v) + ")";
}

} // namespace

Digraph::Digraph(std::vector<VertexId> vertices, std::vector<Arc> arcs)
    : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    for (const auto& [u, v] : arcs_) {
        if (u == v)
            throw DomainError("self-loop " + arc_str(u, v) + " not allowed");
        if (!has_vertex(u) || !has_vertex(v))
            throw DomainError("arc " + arc_str(u, v) + " has an endpoint outside the vertex set");
    }
}

Digraph Digraph::from_arcs(std::initializer_list<Arc> arcs) {
    return from_arcs(std::vector<Arc>(arcs));
}

Digraph Digraph::from_arcs(const std::vector<Arc>& arcs) {
    std::vector<VertexId> vs;
    vs.reserve(arcs.size() * 2);
    for (const auto& [u, v] : arcs) {
        vs.push_back(u);
        vs.push_back(v);
    }
    return Digraph(std::move(vs), arcs);
}

bool Digraph::has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Digraph::has_arc(VertexId u, VertexId v) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), Arc{u, v});
}

std::vector<VertexId> Digraph::out_neighbors(VertexId v) const {
    require_vertex(v);
    std::vector<VertexId> out;
    auto lo = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{v, std::numeric_limits<VertexId>::min()});
    for (auto it = lo; it != arcs_.end() && it->first == v; ++it)
        out.push_back(it->second);
    return out;
}

std::vector<VertexId> Digraph::in_neighbors(VertexId v) const {
    require_vertex(v);
    std::vector<VertexId> in;
    for (const auto& [u, w] : arcs_)
        if (w == v)
            in.push_back(u);
    return in;
}

int Digraph::out_degree(VertexId v) const {
    return static_cast<int>(out_neighbors(v).size());
}

int Digraph::in_degree(VertexId v) const {
    return static_cast<int>(in_neighbors(v).size());
}

VertexId Digraph::max_vertex_id() const {
    return vertices_.empty() ? -1 : vertices_.back();
}

void Digraph::require_vertex(VertexId v) const {
    if (!has_vertex(v))
        throw DomainError("unknown vertex " + id_str(v));
}

void Digraph::require_arc(VertexId u, VertexId v) const {
    require_vertex(u);
    require_vertex(v);
    if (!has_arc(u, v))
        throw DomainError("missing arc " + arc_str(u, v));
}

std::vector<VertexId> reachable_set(const Digraph& g, const std::vector<VertexId>& sources) {
    for (VertexId s : sources)
        g.require_vertex(s);
    std::vector<VertexId> seen(sources);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    std::queue<VertexId> frontier;
    for (VertexId s : seen)
        frontier.push(s);
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (VertexId w : g.out_neighbors(v)) {
            auto it = std::lower_bound(seen.begin(), seen.end(), w);
            if (it == seen.end() || *it != w) {
                seen.insert(it, w);
                frontier.push(w);
            }
        }
    }
    return seen;
}

namespace {

// Iterative Tarjan; components come out in reverse topological order of the
// condensation and are reversed before returning.
struct TarjanState {
    const Digraph& g;
    std::vector<VertexId> index_of;
    std::vector<int> idx, low;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int counter = 0;
    std::vector<std::vector<VertexId>> components;

    explicit TarjanState(const Digraph& graph)
        : g(graph), index_of(graph.vertices()),
          idx(graph.vertex_count(), -1), low(graph.vertex_count(), 0),
          on_stack(graph.vertex_count(), false) {}

    int dense(VertexId v) const {
        return static_cast<int>(std::lower_bound(index_of.begin(), index_of.end(), v) - index_of.begin());
    }

    void run(int root) {
        struct Frame {
            int v;
            std::vector<VertexId> succ;
            std::size_t next = 0;
        };
        std::vector<Frame> frames;
        frames.push_back({root, g.out_neighbors(index_of[root])});
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < f.succ.size()) {
                int w = dense(f.succ[f.next++]);
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, g.out_neighbors(index_of[w])});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == idx[v]) {
                    std::vector<VertexId> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(index_of[w]);
                        if (w == v)
                            break;
                    }
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
            }
        }
    }
};

} // namespace

std::vector<std::vector<VertexId>> strongly_connected_components(const Digraph& g) {
    TarjanState state(g);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (state.idx[i] == -1)
            state.run(static_cast<int>(i));
    std::reverse(state.components.begin(), state.components.end());
    return state.components;
}

std::vector<std::size_t> terminal_components(const Digraph& g,
                                             const std::vector<std::vector<VertexId>>& sccs) {
    std::vector<std::size_t> comp_of;
    std::vector<VertexId> ids;
    for (std::size_t c = 0; c < sccs.size(); ++c)
        for (VertexId v : sccs[c]) {
            ids.push_back(v);
            comp_of.push_back(c);
        }
    auto component = [&](VertexId v) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == v)
                best = comp_of[i];
        return best;
    };
    std::vector<bool> has_exit(sccs.size(), false);
    for (const auto& [u, v] : g.arcs()) {
        std::size_t cu = component(u), cv = component(v);
        if (cu != cv)
            has_exit[cu] = true;
    }
    std::vector<std::size_t> terminal;
    for (std::size_t c = 0; c < sccs.size(); ++c)
        if (!has_exit[c])
            terminal.push_back(c);
    return terminal;
}

bool is_acyclic(const Digraph& g) {
    for (const auto& comp : strongly_connected_components(g))
        if (comp.size() > 1)
            return false;
    // Single-vertex components cannot carry a loop (simple digraph).
    return true;
}

DenseDigraph::DenseDigraph(const Digraph& g) : ids(g.vertices()) {
    if (ids.size() > 64)
        throw CapacityError("dense view supports at most 64 vertices");
    out_mask.assign(ids.size(), 0);
    in_mask.assign(ids.size(), 0);
    for (const auto& [u, v] : g.arcs()) {
        int iu = index_of(u), iv = index_of(v);
        out_mask[iu] |= std::uint64_t{1} << iv;
        in_mask[iv] |= std::uint64_t{1} << iu;
    }
}

int DenseDigraph::index_of(VertexId v) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), v);
    if (it == ids.end() || *it != v)
        return -1;
    return static_cast<int>(it - ids.begin());
}

} // namespace kelly
