#include "kelly/extractor.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "kelly/minor_oracle.hpp"

namespace kelly {

namespace {

void bump(ExtractStats& stats, const char* rule) { stats.rules[rule] += 1; }

struct Builder {
    Digraph g;
    std::vector<MinorOperation> ops;

    void run(MinorOperation op) {
        g = apply(g, op);
        ops.push_back(std::move(op));
    }
    void del_vertex(VertexId v) { run({OpKind::DeleteVertex, {v}}); }
    void del_edge(VertexId u, VertexId v) { run({OpKind::DeleteEdge, {u, v}}); }
    void contract_out(VertexId u, VertexId v) { run({OpKind::OutContract, {u, v}}); }
    void contract_pair(VertexId u, VertexId v) { run({OpKind::ContractCycle, {u, v}}); }
};

// Shortest path from start to the first-reached target, internal vertices
// outside avoid and outside targets; deterministic (neighbors expand in id
// order).  The returned path includes both endpoints.
std::optional<std::vector<VertexId>> bfs_path(const Digraph& g, VertexId start,
                                              const std::set<VertexId>& targets,
                                              const std::set<VertexId>& avoid) {
    if (avoid.contains(start))
        throw InternalError("bfs_path: start is excluded");
    if (targets.contains(start))
        return std::vector<VertexId>{start};
    std::map<VertexId, VertexId> parent;
    parent[start] = start;
    std::queue<VertexId> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (VertexId w : g.out_neighbors(v)) {
            if (parent.contains(w) || avoid.contains(w))
                continue;
            parent[w] = v;
            if (targets.contains(w)) {
                std::vector<VertexId> path{w};
                while (path.back() != start)
                    path.push_back(parent.at(path.back()));
                std::reverse(path.begin(), path.end());
                return path;
            }
            frontier.push(w);
        }
    }
    return std::nullopt;
}

// Merge the path into its last vertex, rear to front: after the calls the
// arc (path.front(), path.back()) exists (or, with include_start, the whole
// path has been identified with path.back() and the front vertex's in-arcs
// now point at it).
void backwards_contract(Builder& b, const std::vector<VertexId>& path, bool include_start) {
    if (path.size() < 2)
        return;
    VertexId last = path.back();
    std::size_t lo = include_start ? 0 : 1;
    for (std::size_t i = path.size() - 1; i-- > lo;)
        b.contract_out(path[i], last);
}

// Merge every vertex of the path except the last into the last, front to
// back; in-arcs of the front vertex end up pointing at path.back().
void forwards_contract(Builder& b, const std::vector<VertexId>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        b.contract_out(path[i], path[i + 1]);
}

std::vector<VertexId> prefix_to(const std::vector<VertexId>& path, VertexId x) {
    auto it = std::find(path.begin(), path.end(), x);
    if (it == path.end())
        throw InternalError("prefix_to: vertex not on path");
    return {path.begin(), it + 1};
}

std::vector<VertexId> suffix_from(const std::vector<VertexId>& path, VertexId x) {
    auto it = std::find(path.begin(), path.end(), x);
    if (it == path.end())
        throw InternalError("suffix_from: vertex not on path");
    return {it, path.end()};
}

VertexId last_shared(const std::vector<VertexId>& main, const std::vector<VertexId>& other) {
    std::set<VertexId> on_other(other.begin(), other.end());
    for (auto it = main.rbegin(); it != main.rend(); ++it)
        if (on_other.contains(*it))
            return *it;
    throw InternalError("last_shared: paths share no vertex");
}

VertexId first_shared(const std::vector<VertexId>& main, const std::vector<VertexId>& other) {
    std::set<VertexId> on_other(other.begin(), other.end());
    for (VertexId v : main)
        if (on_other.contains(v))
            return v;
    throw InternalError("first_shared: paths share no vertex");
}

bool path_touches(const std::vector<VertexId>& path, VertexId v) {
    return std::find(path.begin(), path.end(), v) != path.end();
}

// Delete everything outside the role image, delete stray arcs among the
// roles, and check the remainder is exactly the pattern.  roles maps
// pattern vertices to current-graph vertices.
WitnessScript finish(Builder& b, const Digraph& pattern,
                     const std::vector<std::pair<VertexId, VertexId>>& roles) {
    std::set<VertexId> keep;
    for (const auto& [p, cur] : roles) {
        if (!b.g.has_vertex(cur))
            throw InternalError("finish: role vertex missing");
        if (!keep.insert(cur).second)
            throw InternalError("finish: role vertices collide");
    }
    std::map<VertexId, VertexId> role_of;
    for (const auto& [p, cur] : roles)
        role_of[p] = cur;
    std::vector<VertexId> doomed;
    for (VertexId v : b.g.vertices())
        if (!keep.contains(v))
            doomed.push_back(v);
    for (VertexId v : doomed)
        b.del_vertex(v);
    std::set<Arc> image;
    for (const auto& [p, q] : pattern.arcs())
        image.insert({role_of.at(p), role_of.at(q)});
    std::vector<Arc> stray;
    for (const Arc& arc : b.g.arcs())
        if (!image.contains(arc))
            stray.push_back(arc);
    for (const auto& [u, v] : stray)
        b.del_edge(u, v);
    std::set<Arc> remaining(b.g.arcs().begin(), b.g.arcs().end());
    if (remaining != image)
        throw InternalError("finish: pattern arcs missing after cleanup");
    WitnessScript script;
    script.steps = b.ops;
    script.claimed_result = pattern;
    for (const auto& [p, cur] : roles)
        script.vertex_map[p] = cur;
    return script;
}

int directed_arc_count(const Digraph& g) {
    int count = 0;
    for (const auto& [u, v] : g.arcs())
        if (!g.has_arc(v, u))
            ++count;
    return count;
}

int bidirected_pair_count(const Digraph& g) {
    int count = 0;
    for (const auto& [u, v] : g.arcs())
        if (u < v && g.has_arc(v, u))
            ++count;
    return count;
}

void normalize_step(Builder& b, ExtractStats& stats) {
    std::vector<Arc> extra;
    for (VertexId v : b.g.vertices()) {
        std::vector<VertexId> out = b.g.out_neighbors(v);
        for (std::size_t i = 2; i < out.size(); ++i)
            extra.push_back({v, out[i]});
    }
    if (!extra.empty()) {
        bump(stats, "trim_extra_out_arcs");
        for (const auto& [u, v] : extra)
            b.del_edge(u, v);
    }
    auto sccs = strongly_connected_components(b.g);
    if (sccs.size() > 1) {
        bump(stats, "restrict_terminal_scc");
        auto terminals = terminal_components(b.g, sccs);
        if (terminals.empty())
            throw InternalError("normalize: no terminal component");
        std::size_t chosen = terminals.front();
        for (std::size_t c : terminals)
            if (sccs[c].front() < sccs[chosen].front())
                chosen = c;
        std::set<VertexId> keep(sccs[chosen].begin(), sccs[chosen].end());
        std::vector<VertexId> doomed;
        for (VertexId v : b.g.vertices())
            if (!keep.contains(v))
                doomed.push_back(v);
        for (VertexId v : doomed)
            b.del_vertex(v);
    }
}

VertexId sole_other_out(const Digraph& g, VertexId v, VertexId excluded) {
    std::vector<VertexId> out = g.out_neighbors(v);
    if (out.size() != 2)
        throw InternalError("expected out-degree exactly 2");
    if (out[0] == excluded)
        return out[1];
    if (out[1] == excluded)
        return out[0];
    throw InternalError("expected an arc to the excluded vertex");
}

std::vector<VertexId> common_in_neighbors(const Digraph& g, VertexId a, VertexId b) {
    std::vector<VertexId> zs;
    for (VertexId z : g.vertices())
        if (z != a && z != b && g.has_arc(z, a) && g.has_arc(z, b))
            zs.push_back(z);
    return zs;
}

bool has_common_out_neighbor(const Digraph& g, VertexId a, VertexId b) {
    for (VertexId z : g.vertices())
        if (z != a && z != b && g.has_arc(a, z) && g.has_arc(b, z))
            return true;
    return false;
}

std::vector<VertexId> blockers_of(const Digraph& g, VertexId tail, VertexId head) {
    std::vector<VertexId> zs;
    for (VertexId z : g.vertices())
        if (z != tail && z != head && g.has_arc(z, tail) && g.has_arc(z, head))
            zs.push_back(z);
    return zs;
}

VertexId require_blocker(const Digraph& g, VertexId tail, VertexId head) {
    auto zs = blockers_of(g, tail, head);
    if (zs.empty())
        throw InternalError("directed arc without blocker after the reduction pass");
    return zs.front();
}

const std::set<VertexId> kNoAvoid;

// All arcs bidirected: the graph is a bidirected cycle.  Contracting any
// bidirected pair shortens the cycle by one; stop at the triangle.
WitnessScript emit_bidirected_cycle(Builder& b, ExtractStats& stats) {
    bump(stats, "k3_bidirected_cycle");
    while (b.g.vertex_count() > 3) {
        Arc first = b.g.arcs().front();
        b.contract_pair(first.first, first.second);
    }
    const std::vector<VertexId>& vs = b.g.vertices();
    return finish(b, obstruction_k3(), {{0, vs[0]}, {1, vs[1]}, {2, vs[2]}});
}

// Common in-neighbor w with a return arc (u,w); (v,w) absent.
WitnessScript run_case_two(Builder& b, VertexId u, VertexId v, VertexId w, ExtractStats& stats) {
    VertexId a = sole_other_out(b.g, v, u);
    auto trigger = bfs_path(b.g, a, {u, v, w}, kNoAvoid);
    if (!trigger)
        throw InternalError("case 2: no path back to the triple");
    VertexId hit = trigger->back();

    if (hit == w) {
        // Identify the path with w; (v,a) becomes (v,w), closing the triangle.
        bump(stats, "k3_return_path");
        backwards_contract(b, *trigger, true);
        return finish(b, obstruction_k3(), {{0, u}, {1, v}, {2, w}});
    }

    if (hit == u) {
        if (b.g.has_arc(a, v)) {
            bump(stats, "n4_backarc");
            backwards_contract(b, *trigger, false); // edge (a,u)
            return finish(b, obstruction_n4(), {{0, a}, {1, v}, {2, u}, {3, w}});
        }
        // (v,a) is directed, so it has a blocker; join the two escape paths
        // at their last shared vertex x and pull both ends back to it.
        bump(stats, "n4_blocker_join");
        VertexId blk = require_blocker(b.g, v, a);
        auto to_blk = bfs_path(b.g, a, {blk}, {u, v, w});
        if (!to_blk)
            throw InternalError("case 2: blocker unreachable despite the single exit");
        VertexId x = last_shared(*trigger, *to_blk);
        forwards_contract(b, prefix_to(*to_blk, x));
        backwards_contract(b, suffix_from(*trigger, x), false); // (x,u)
        backwards_contract(b, suffix_from(*to_blk, x), false);  // (x,blk)
        b.contract_out(blk, v);                                 // (x,v)
        return finish(b, obstruction_n4(), {{0, x}, {1, v}, {2, u}, {3, w}});
    }

    // hit == v: the path returned to v.
    if (b.g.has_arc(a, v)) {
        if (b.g.has_arc(a, u)) {
            bump(stats, "n4_common_out");
            return finish(b, obstruction_n4(), {{0, a}, {1, v}, {2, u}, {3, w}});
        }
        // {a,v} is bidirected with a common in-neighbor (common out-neighbor
        // would force the arc (a,u) handled above).
        bump(stats, "m5_common_in");
        auto zs = common_in_neighbors(b.g, a, v);
        if (zs.empty())
            throw InternalError("case 2: bidirected edge without common neighbor survived");
        VertexId z = zs.front();
        auto to_z = bfs_path(b.g, a, {z}, {u, v, w});
        if (!to_z)
            throw InternalError("case 2: common in-neighbor unreachable despite the single exit");
        backwards_contract(b, *to_z, false); // (a,z)
        return finish(b, obstruction_m5(), {{0, w}, {1, u}, {2, v}, {3, a}, {4, z}});
    }

    VertexId blk_b = require_blocker(b.g, v, a);     // (b,v),(b,a)
    VertexId blk_c = require_blocker(b.g, blk_b, v); // (c,b),(c,v)
    if (b.g.has_arc(a, blk_b)) {
        bump(stats, "m5_blocker_chain");
        auto to_c = bfs_path(b.g, a, {blk_c}, {u, v, w});
        if (!to_c)
            throw InternalError("case 2: second blocker unreachable despite the single exit");
        if (path_touches(*to_c, blk_b))
            throw InternalError("case 2: first blocker lies on the path to the second");
        backwards_contract(b, *to_c, false); // (a,c)
        b.contract_out(blk_c, v);            // (a,v)
        return finish(b, obstruction_m5(), {{0, w}, {1, u}, {2, v}, {3, a}, {4, blk_b}});
    }
    bump(stats, "m5_double_blocker");
    VertexId blk_d = require_blocker(b.g, blk_b, a); // (d,b),(d,a)
    auto to_d = bfs_path(b.g, a, {blk_d}, {u, v, w});
    auto to_c = bfs_path(b.g, a, {blk_c}, {u, v, w});
    if (!to_d || !to_c)
        throw InternalError("case 2: blocker pair unreachable despite the single exit");
    VertexId x = last_shared(*to_d, *to_c);
    forwards_contract(b, prefix_to(*to_c, x));
    backwards_contract(b, suffix_from(*to_d, x), false); // (x,d)
    backwards_contract(b, suffix_from(*to_c, x), false); // (x,c)
    b.contract_out(blk_c, v);                            // (x,v)
    b.contract_out(blk_d, blk_b);                        // (x,b)
    return finish(b, obstruction_m5(), {{0, w}, {1, u}, {2, v}, {3, x}, {4, blk_b}});
}

// 3.2 with an escape path from b_side back to u (avoiding v).  The clean
// escape pathA supplies the (v,w) pair at the end.
std::optional<WitnessScript> escape_toward_u(const Builder& base, VertexId u, VertexId v,
                                             VertexId w, VertexId b_side,
                                             const std::vector<VertexId>& path_a,
                                             const std::vector<VertexId>& p_bu,
                                             ExtractStats& stats) {
    const Digraph& g = base.g;
    if (g.has_arc(b_side, v)) {
        bump(stats, "n4_escape_arc_to_v");
        Builder t = base;
        backwards_contract(t, p_bu, false); // (b,u)
        backwards_contract(t, path_a, true);
        return finish(t, obstruction_n4(), {{0, b_side}, {1, u}, {2, v}, {3, w}});
    }
    if (g.has_arc(b_side, u)) {
        // {b,u} bidirected; its common neighbor must be an in-neighbor,
        // since a common out-neighbor would be v via the arc handled above.
        for (VertexId z : common_in_neighbors(g, b_side, u)) {
            auto to_z = bfs_path(g, b_side, {z}, {u, v, w});
            if (!to_z)
                continue;
            bump(stats, "m5_escape_common_in");
            Builder t = base;
            backwards_contract(t, *to_z, false); // (b,z)
            backwards_contract(t, path_a, true);
            return finish(t, obstruction_m5(), {{0, w}, {1, v}, {2, u}, {3, b_side}, {4, z}});
        }
        return std::nullopt;
    }
    // (u,b) is directed.
    for (VertexId bstar : blockers_of(g, u, b_side)) {
        if (g.has_arc(b_side, bstar)) {
            for (VertexId cstar : blockers_of(g, bstar, u)) {
                auto to_c = bfs_path(g, b_side, {cstar}, {u, v, w});
                if (!to_c)
                    continue;
                if (path_touches(*to_c, bstar))
                    throw InternalError("escape: blocker on its own feeder path");
                bump(stats, "m5_escape_blocker_chain");
                Builder t = base;
                backwards_contract(t, *to_c, false); // (b,c*)
                t.contract_out(cstar, u);            // (b,u)
                backwards_contract(t, path_a, true);
                return finish(t, obstruction_m5(),
                              {{0, w}, {1, v}, {2, u}, {3, b_side}, {4, bstar}});
            }
        } else {
            for (VertexId dstar : blockers_of(g, bstar, b_side)) {
                for (VertexId cstar : blockers_of(g, bstar, u)) {
                    auto to_d = bfs_path(g, b_side, {dstar}, {u, v, w});
                    auto to_c = bfs_path(g, b_side, {cstar}, {u, v, w});
                    if (!to_d || !to_c)
                        continue;
                    bump(stats, "m5_escape_double_blocker");
                    Builder t = base;
                    VertexId x = last_shared(*to_d, *to_c);
                    forwards_contract(t, prefix_to(*to_c, x));
                    backwards_contract(t, suffix_from(*to_d, x), false); // (x,d*)
                    backwards_contract(t, suffix_from(*to_c, x), false); // (x,c*)
                    t.contract_out(cstar, u);                            // (x,u)
                    t.contract_out(dstar, bstar);                        // (x,b*)
                    backwards_contract(t, path_a, true);
                    return finish(t, obstruction_m5(),
                                  {{0, w}, {1, v}, {2, u}, {3, x}, {4, bstar}});
                }
            }
        }
    }
    return std::nullopt;
}

// 3.2 with an escape path from b_side to v (avoiding u).
std::optional<WitnessScript> escape_toward_v(const Builder& base, VertexId u, VertexId v,
                                             VertexId w, VertexId b_side,
                                             const std::vector<VertexId>& path_a,
                                             const std::vector<VertexId>& p_bv,
                                             ExtractStats& stats) {
    const Digraph& g = base.g;
    if (g.has_arc(b_side, u)) {
        bump(stats, "n4_escape_arc_to_u");
        Builder t = base;
        backwards_contract(t, p_bv, false); // (b,v)
        backwards_contract(t, path_a, true);
        return finish(t, obstruction_n4(), {{0, b_side}, {1, u}, {2, v}, {3, w}});
    }
    // (u,b) directed; join the trigger path with a path to a blocker of it.
    for (VertexId bstar : blockers_of(g, u, b_side)) {
        auto to_bstar = bfs_path(g, b_side, {bstar}, {u, v, w});
        if (!to_bstar)
            continue;
        bump(stats, "n4_escape_blocker_join");
        Builder t = base;
        VertexId x = last_shared(p_bv, *to_bstar);
        forwards_contract(t, prefix_to(*to_bstar, x));
        backwards_contract(t, suffix_from(*to_bstar, x), false); // (x,b*)
        backwards_contract(t, suffix_from(p_bv, x), false);      // (x,v)
        t.contract_out(bstar, u);                                // (x,u)
        backwards_contract(t, path_a, true);
        return finish(t, obstruction_n4(), {{0, x}, {1, u}, {2, v}, {3, w}});
    }
    return std::nullopt;
}

WitnessScript oracle_fallback(Builder& b, ExtractStats& stats) {
    stats.oracle_fallbacks += 1;
    for (const char* name : {"k3", "n4", "m5"}) {
        MinorVerdict verdict = contains_minor(b.g, obstruction_by_name(name),
                                              static_cast<int>(b.g.vertex_count()));
        if (!verdict.contains)
            continue;
        WitnessScript script = std::move(*verdict.witness);
        script.steps.insert(script.steps.begin(), b.ops.begin(), b.ops.end());
        return script;
    }
    throw InternalError("extract: fallback search found no obstruction");
}

// Common in-neighbor w with no return arcs: (w,u),(w,v) present, (u,w),
// (v,w) absent.
WitnessScript run_case_three(Builder& b, VertexId u, VertexId v, VertexId w,
                             ExtractStats& stats) {
    VertexId a = sole_other_out(b.g, v, u);
    VertexId b_side = sole_other_out(b.g, u, v);

    if (a == b_side) {
        bump(stats, "k3_shared_escape");
        auto path = bfs_path(b.g, a, {w}, {u, v});
        if (!path)
            throw InternalError("case 3: shared escape cannot reach w");
        backwards_contract(b, *path, true); // (u,w),(v,w) appear
        return finish(b, obstruction_k3(), {{0, u}, {1, v}, {2, w}});
    }

    auto path_a = bfs_path(b.g, a, {w}, {u, v});
    auto path_b = bfs_path(b.g, b_side, {w}, {u, v});
    if (!path_a && !path_b)
        throw InternalError("case 3: neither escape reaches w outside {u,v}");

    if (path_a && path_b) {
        // Merge the escapes at their first shared vertex and ride the rest
        // of path_b into w.
        bump(stats, "k3_merged_escapes");
        VertexId x = first_shared(*path_a, *path_b);
        backwards_contract(b, prefix_to(*path_a, x), true); // (v,a) -> (v,x)
        backwards_contract(b, prefix_to(*path_b, x), true); // (u,b) -> (u,x)
        backwards_contract(b, suffix_from(*path_b, x), true);
        return finish(b, obstruction_k3(), {{0, u}, {1, v}, {2, w}});
    }

    if (!path_a) { // make the a-side the clean one
        std::swap(u, v);
        std::swap(a, b_side);
        path_a = std::move(path_b);
    }

    auto p_bu = bfs_path(b.g, b_side, {u}, {v, w});
    auto p_bv = bfs_path(b.g, b_side, {v}, {u, w});
    if (!p_bu && !p_bv)
        throw InternalError("case 3: blocked side reaches neither endpoint first");
    if (p_bu)
        if (auto script = escape_toward_u(b, u, v, w, b_side, *path_a, *p_bu, stats))
            return *script;
    if (p_bv)
        if (auto script = escape_toward_v(b, u, v, w, b_side, *path_a, *p_bv, stats))
            return *script;
    return oracle_fallback(b, stats);
}

// Every bidirected edge has only common out-neighbors.
WitnessScript run_case_four(Builder& b, ExtractStats& stats) {
    const Digraph& g = b.g;
    for (const auto& [u, v] : g.arcs()) {
        if (u > v || !g.has_arc(v, u))
            continue;
        for (VertexId w : g.vertices()) {
            if (w == u || w == v || !g.has_arc(u, w) || !g.has_arc(v, w))
                continue;
            // w blocks some directed arc between its two out-neighbors.
            std::vector<VertexId> wout = g.out_neighbors(w);
            if (wout.size() != 2)
                throw InternalError("case 4: out-degree drifted from 2");
            VertexId x = wout[0], y = wout[1];
            VertexId tail, head;
            if (g.has_arc(x, y) && !g.has_arc(y, x)) {
                tail = x;
                head = y;
            } else if (g.has_arc(y, x) && !g.has_arc(x, y)) {
                tail = y;
                head = x;
            } else {
                continue; // this witness blocks nothing; try another
            }
            if (!g.has_arc(tail, w))
                throw InternalError(
                    "case 4: blocker edge not paired with a bidirected edge (unreachable branch)");
            bump(stats, "n4_out_witness");
            auto path = bfs_path(g, head, {u, v}, kNoAvoid);
            if (!path)
                throw InternalError("case 4: no path from the blocked head to the pair");
            if (path_touches(*path, w) || path_touches(*path, tail))
                throw InternalError("case 4: escape path re-enters the witness");
            VertexId uu = u, vv = v;
            if (path->back() == uu)
                std::swap(uu, vv);
            backwards_contract(b, *path, true); // (w,head)->(w,vv), (tail,head)->(tail,vv)
            return finish(b, obstruction_n4(), {{0, uu}, {1, vv}, {2, w}, {3, tail}});
        }
    }
    throw InternalError("case 4: no bidirected edge with a blocking out-witness");
}

} // namespace

ExtractionContext normalize(const Digraph& g) {
    for (VertexId v : g.vertices())
        if (g.out_degree(v) < 2)
            throw DomainError("normalize: vertex " + std::to_string(v) +
                              " has out-degree below 2");
    if (g.empty())
        throw DomainError("normalize: graph is empty");
    Builder b{g, {}};
    ExtractStats scratch;
    normalize_step(b, scratch);
    ExtractionContext ctx;
    ctx.directed_count = directed_arc_count(b.g);
    ctx.bidirected_count = bidirected_pair_count(b.g);
    if (ctx.directed_count + 2 * ctx.bidirected_count != 2 * static_cast<int>(b.g.vertex_count()))
        throw InternalError("normalize: arc count identity violated");
    ctx.current = std::move(b.g);
    ctx.pending_ops = std::move(b.ops);
    return ctx;
}

std::optional<VertexId> find_blocker(const Digraph& g, VertexId u, VertexId v) {
    g.require_arc(u, v);
    if (g.has_arc(v, u))
        throw DomainError("find_blocker: arc is bidirected");
    auto zs = blockers_of(g, u, v);
    if (zs.empty())
        return std::nullopt;
    return zs.front();
}

WitnessScript extract(const Digraph& g, ExtractStats* stats) {
    ExtractStats scratch;
    ExtractStats& st = stats ? *stats : scratch;
    if (g.empty())
        throw DomainError("extract: graph is empty");
    for (VertexId v : g.vertices())
        if (g.out_degree(v) < 2)
            throw DomainError("extract: vertex " + std::to_string(v) +
                              " has out-degree below 2");

    Builder b{g, {}};
    const int progress_limit = static_cast<int>(g.vertex_count() + g.arc_count()) + 8;
    WitnessScript script;
    for (int round = 0;; ++round) {
        if (round > progress_limit)
            throw InternalError("extract: reduction loop stopped making progress");
        normalize_step(b, st);

        int alpha = directed_arc_count(b.g);
        int beta = bidirected_pair_count(b.g);
        if (alpha + 2 * beta != 2 * static_cast<int>(b.g.vertex_count()))
            throw InternalError("extract: arc count identity violated");

        if (alpha == 0) {
            script = emit_bidirected_cycle(b, st);
            break;
        }

        // Reduction pass: out-contract a blockerless directed arc, or
        // contract a bidirected edge with no common neighbor at all; both
        // keep every out-degree at exactly 2.
        {
            const std::vector<Arc> arcs = b.g.arcs();
            bool reduced = false;
            for (const auto& [u, v] : arcs) {
                if (b.g.has_arc(v, u))
                    continue;
                if (blockers_of(b.g, u, v).empty()) {
                    bump(st, "contract_unblocked_arc");
                    b.contract_out(u, v);
                    reduced = true;
                    break;
                }
            }
            if (reduced)
                continue;
            for (const auto& [u, v] : arcs) {
                if (u > v || !b.g.has_arc(v, u))
                    continue;
                if (common_in_neighbors(b.g, u, v).empty() &&
                    !has_common_out_neighbor(b.g, u, v)) {
                    bump(st, "contract_lonely_bidirected_edge");
                    b.contract_pair(u, v);
                    reduced = true;
                    break;
                }
            }
            if (reduced)
                continue;
        }

        // Dispatch on the smallest bidirected edge with a common
        // in-neighbor; if none exists every bidirected edge is witnessed
        // from the out side only.
        bool dispatched = false;
        const std::vector<Arc> arcs = b.g.arcs();
        for (const auto& [u, v] : arcs) {
            if (u > v || !b.g.has_arc(v, u))
                continue;
            auto zs = common_in_neighbors(b.g, u, v);
            if (zs.empty())
                continue;
            VertexId w = zs.front();
            bool uw = b.g.has_arc(u, w), vw = b.g.has_arc(v, w);
            if (uw && vw) {
                bump(st, "k3_adjacent_triple");
                script = finish(b, obstruction_k3(), {{0, u}, {1, v}, {2, w}});
            } else if (uw) {
                script = run_case_two(b, u, v, w, st);
            } else if (vw) {
                script = run_case_two(b, v, u, w, st);
            } else {
                script = run_case_three(b, u, v, w, st);
            }
            dispatched = true;
            break;
        }
        if (!dispatched)
            script = run_case_four(b, st);
        break;
    }

    ReplayResult check = replay(g, script);
    if (!check.isomorphic)
        throw InternalError("extract: emitted witness failed replay verification");
    return script;
}

} // namespace kelly
