#include "kelly/kelly_decomposition.hpp"

#include <algorithm>
#include <set>

namespace kelly {

namespace {

bool subset_of(const std::vector<VertexId>& a, const std::set<VertexId>& b) {
    return std::all_of(a.begin(), a.end(), [&](VertexId v) { return b.contains(v); });
}

} // namespace

bool guards(const Digraph& g, const std::vector<VertexId>& x, const std::vector<VertexId>& w) {
    for (VertexId v : x)
        g.require_vertex(v);
    for (VertexId v : w)
        g.require_vertex(v);
    std::set<VertexId> xs(x.begin(), x.end());
    std::set<VertexId> ws(w.begin(), w.end());
    for (VertexId v : ws)
        if (xs.contains(v))
            return false;
    for (const auto& [u, v] : g.arcs())
        if (ws.contains(u) && !ws.contains(v) && !xs.contains(v))
            return false;
    return true;
}

int KellyDecomposition::width() const {
    int best = 0;
    for (int i : nodes) {
        std::set<VertexId> bag;
        if (auto it = w_bags.find(i); it != w_bags.end())
            bag.insert(it->second.begin(), it->second.end());
        if (auto it = x_bags.find(i); it != x_bags.end())
            bag.insert(it->second.begin(), it->second.end());
        best = std::max(best, static_cast<int>(bag.size()));
    }
    return best;
}

namespace {

struct DecompositionIndex {
    std::map<int, std::vector<int>> children;
    std::map<int, int> parent_count;
    std::vector<int> roots;                    // in node order
    std::map<int, std::set<VertexId>> cones;   // W bags at or below each node

    DecompositionIndex(const KellyDecomposition& d) {
        std::set<int> node_set(d.nodes.begin(), d.nodes.end());
        if (node_set.size() != d.nodes.size())
            throw DomainError("decomposition: duplicate node ids");
        for (int i : d.nodes)
            parent_count[i] = 0;
        for (const auto& [p, c] : d.edges) {
            if (!node_set.contains(p) || !node_set.contains(c))
                throw DomainError("decomposition: edge references unknown node");
            children[p].push_back(c);
            parent_count[c] += 1;
        }
        for (int i : d.nodes)
            if (parent_count[i] == 0)
                roots.push_back(i);

        // Cones by reverse topological order; a cycle leaves some node
        // unprocessed and is reported as a structural error.
        std::map<int, int> pending;
        for (int i : d.nodes)
            pending[i] = static_cast<int>(children[i].size());
        std::vector<int> ready;
        for (int i : d.nodes)
            if (pending[i] == 0)
                ready.push_back(i);
        std::map<int, std::vector<int>> parents;
        for (const auto& [p, c] : d.edges)
            parents[c].push_back(p);
        std::size_t processed = 0;
        while (!ready.empty()) {
            int i = ready.back();
            ready.pop_back();
            ++processed;
            std::set<VertexId>& cone = cones[i];
            if (auto it = d.w_bags.find(i); it != d.w_bags.end())
                cone.insert(it->second.begin(), it->second.end());
            for (int c : children[i])
                cone.insert(cones[c].begin(), cones[c].end());
            for (int p : parents[i])
                if (--pending[p] == 0)
                    ready.push_back(p);
        }
        if (processed != d.nodes.size())
            throw DomainError("decomposition: node DAG contains a cycle");
    }
};

} // namespace

DecompositionVerdict validate_decomposition(const Digraph& g, const KellyDecomposition& d) {
    for (const auto& [node, bag] : d.w_bags)
        for (VertexId v : bag)
            g.require_vertex(v);
    for (const auto& [node, bag] : d.x_bags)
        for (VertexId v : bag)
            g.require_vertex(v);

    DecompositionIndex index(d);
    DecompositionVerdict verdict;
    verdict.width = d.width();

    // Partition clause: W bags disjoint, union covers V; empty bags allowed.
    std::set<VertexId> seen;
    for (int i : d.nodes) {
        auto it = d.w_bags.find(i);
        if (it == d.w_bags.end())
            continue;
        for (VertexId v : it->second) {
            if (!seen.insert(v).second) {
                verdict.violation = "partition: vertex " + std::to_string(v) +
                                    " appears in more than one W bag";
                verdict.offending_node = i;
                return verdict;
            }
        }
    }
    if (seen.size() != g.vertex_count()) {
        verdict.violation = "partition: W bags do not cover the vertex set";
        return verdict;
    }

    // Guarding clause.
    for (int i : d.nodes) {
        std::vector<VertexId> cone(index.cones[i].begin(), index.cones[i].end());
        std::vector<VertexId> x;
        if (auto it = d.x_bags.find(i); it != d.x_bags.end())
            x = it->second;
        if (!guards(g, x, cone)) {
            verdict.violation = "guarding: X of node " + std::to_string(i) +
                                " does not guard the W bags at or below it";
            verdict.offending_node = i;
            return verdict;
        }
    }

    // Ordering clause for children.
    for (int i : d.nodes) {
        std::vector<int> stored;
        if (auto it = d.child_order.find(i); it != d.child_order.end())
            stored = it->second;
        std::vector<int> actual = index.children[i];
        std::vector<int> a(stored), b(actual);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw DomainError("decomposition: child_order of node " + std::to_string(i) +
                              " does not list its children");
        std::set<VertexId> allowed;
        if (auto it = d.w_bags.find(i); it != d.w_bags.end())
            allowed.insert(it->second.begin(), it->second.end());
        if (auto it = d.x_bags.find(i); it != d.x_bags.end())
            allowed.insert(it->second.begin(), it->second.end());
        for (int child : stored) {
            std::vector<VertexId> x;
            if (auto it = d.x_bags.find(child); it != d.x_bags.end())
                x = it->second;
            if (!subset_of(x, allowed)) {
                verdict.violation = "ordering: X of child " + std::to_string(child) +
                                    " escapes W_i, X_i and earlier sibling cones";
                verdict.offending_node = i;
                return verdict;
            }
            allowed.insert(index.cones[child].begin(), index.cones[child].end());
        }
    }

    // Ordering clause for roots.  The first stored root is unconstrained
    // (the literal inclusion would force its W bag empty); every later root
    // must satisfy the inclusion as written.
    {
        std::vector<int> a(d.root_order), b(index.roots);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw DomainError("decomposition: root_order does not list the roots");
        std::set<VertexId> allowed;
        for (std::size_t q = 0; q < d.root_order.size(); ++q) {
            int root = d.root_order[q];
            if (q > 0) {
                std::vector<VertexId> wbag;
                if (auto it = d.w_bags.find(root); it != d.w_bags.end())
                    wbag = it->second;
                if (!subset_of(wbag, allowed)) {
                    verdict.violation = "ordering: W of root " + std::to_string(root) +
                                        " escapes the cones of earlier roots";
                    verdict.offending_node = root;
                    return verdict;
                }
            }
            allowed.insert(index.cones[root].begin(), index.cones[root].end());
        }
    }

    verdict.valid = true;
    return verdict;
}

namespace {

// Greedy saturation order for the children of every node: repeatedly place
// the smallest child whose X bag is covered so far.  Returns false if some
// node's children cannot be ordered.
bool assign_child_orders(const Digraph& g, KellyDecomposition& d) {
    DecompositionIndex index(d);
    d.child_order.clear();
    for (int i : d.nodes) {
        std::set<VertexId> allowed;
        if (auto it = d.w_bags.find(i); it != d.w_bags.end())
            allowed.insert(it->second.begin(), it->second.end());
        if (auto it = d.x_bags.find(i); it != d.x_bags.end())
            allowed.insert(it->second.begin(), it->second.end());
        std::vector<int> remaining = index.children[i];
        std::sort(remaining.begin(), remaining.end());
        std::vector<int>& order = d.child_order[i];
        while (!remaining.empty()) {
            bool placed = false;
            for (std::size_t j = 0; j < remaining.size(); ++j) {
                int c = remaining[j];
                std::vector<VertexId> x;
                if (auto it = d.x_bags.find(c); it != d.x_bags.end())
                    x = it->second;
                if (subset_of(x, allowed)) {
                    order.push_back(c);
                    allowed.insert(index.cones[c].begin(), index.cones[c].end());
                    remaining.erase(remaining.begin() + j);
                    placed = true;
                    break;
                }
            }
            if (!placed)
                return false;
        }
    }
    return true;
}

KellyDecomposition skeleton(const Digraph& g, const EliminationOrdering& e) {
    KellyDecomposition d;
    for (VertexId v : e.order) {
        d.nodes.push_back(v);
        d.w_bags[v] = {v};
    }
    for (std::size_t i = 0; i < e.order.size(); ++i)
        d.x_bags[e.order[i]] = e.supports[i];
    return d;
}

// Primary arrangement.  For each vertex u let its cone be everything
// reachable from u through vertices eliminated before u (u included).  Arcs
// leaving a cone land in the support of its apex, so using the cones as the
// descendant sets satisfies the guarding clause by construction; the node
// of u points at every other member of its cone.  Cone containment also
// covers the ordering clause when children are taken latest-eliminated
// first: every support element of a child is either the apex, in the
// apex's support, or in the cone of a later-eliminated sibling.  Multiple
// cone-maximal vertices are joined under one artificial root with empty
// bags.
KellyDecomposition arrange_by_cones(const Digraph& g, const EliminationOrdering& e,
                                    const std::vector<int>& position) {
    KellyDecomposition d = skeleton(g, e);
    const int n = static_cast<int>(e.order.size());

    // cone[i] = dense positions reachable from e.order[i] inside the
    // elimination prefix up to i.
    std::vector<std::vector<int>> cone(n);
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{i};
        seen[i] = true;
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            cone[i].push_back(p);
            for (VertexId w : g.out_neighbors(e.order[p])) {
                int pw = position[w];
                if (pw <= i && !seen[pw]) {
                    seen[pw] = true;
                    stack.push_back(pw);
                }
            }
        }
    }

    std::vector<bool> is_root(n, true);
    for (int i = 0; i < n; ++i)
        for (int p : cone[i])
            if (p != i) {
                d.edges.push_back({e.order[i], e.order[p]});
                is_root[p] = false;
            }

    std::vector<int> roots;
    for (int i = n - 1; i >= 0; --i)
        if (is_root[i])
            roots.push_back(i);
    if (roots.size() == 1) {
        d.root_order.push_back(e.order[roots[0]]);
    } else {
        int super = g.max_vertex_id() + 1;
        d.nodes.push_back(super);
        d.w_bags[super] = {};
        d.x_bags[super] = {};
        for (int r : roots)
            d.edges.push_back({super, e.order[r]});
        d.root_order.push_back(super);
    }
    return d;
}

// Fallback arrangement: a single chain in reverse elimination order.
KellyDecomposition arrange_as_chain(const Digraph& g, const EliminationOrdering& e) {
    KellyDecomposition d = skeleton(g, e);
    const int n = static_cast<int>(e.order.size());
    for (int i = n - 1; i > 0; --i)
        d.edges.push_back({e.order[i], e.order[i - 1]});
    if (n > 0)
        d.root_order.push_back(e.order[n - 1]);
    return d;
}

} // namespace

KellyDecomposition build_decomposition(const Digraph& g, const EliminationOrdering& ordering) {
    // Recompute the supports so stale or hand-built inputs cannot poison
    // the bags; this also checks that the order is a permutation of V.
    EliminationOrdering e = ordering_width(g, ordering.order);
    if (e.order.empty())
        return {};

    std::vector<int> position(g.max_vertex_id() + 1, -1);
    for (std::size_t i = 0; i < e.order.size(); ++i)
        position[e.order[i]] = static_cast<int>(i);

    for (int strategy = 0; strategy < 2; ++strategy) {
        KellyDecomposition d = strategy == 0 ? arrange_by_cones(g, e, position)
                                             : arrange_as_chain(g, e);
        if (!assign_child_orders(g, d))
            continue;
        DecompositionVerdict verdict = validate_decomposition(g, d);
        if (verdict.valid && verdict.width == e.width + 1)
            return d;
    }
    throw InternalError("build_decomposition: no valid arrangement found for this ordering");
}

} // namespace kelly
