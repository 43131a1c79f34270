#include <doctest.h>

#include "helpers.hpp"
#include "kelly/canonical.hpp"
#include "kelly/digraph.hpp"
#include "kelly/genlab.hpp"

using namespace kelly;
using namespace kelly::testing;

TEST_CASE("digraph construction enforces invariants") {
    CHECK_THROWS_AS(Digraph({0, 1}, {{0, 0}}), DomainError);
    CHECK_THROWS_AS(Digraph({0, 1}, {{0, 2}}), DomainError);
    Digraph g({0, 1, 0}, {{0, 1}, {0, 1}}); // set semantics
    CHECK(g.vertex_count() == 2);
    CHECK(g.arc_count() == 1);
    CHECK(g.has_arc(0, 1));
    CHECK_FALSE(g.has_arc(1, 0));
}

TEST_CASE("adjacency queries") {
    const Digraph& n4 = [] {
        return Digraph::from_arcs({{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {0, 2}, {3, 1}});
    }();
    CHECK(n4.out_neighbors(0) == std::vector<VertexId>{1, 2});
    CHECK(n4.in_neighbors(1) == std::vector<VertexId>{0, 2, 3});
    CHECK(n4.out_degree(3) == 2);
    CHECK(n4.in_degree(0) == 1);
    CHECK(n4.max_vertex_id() == 3);
    CHECK_THROWS_AS(n4.out_neighbors(9), DomainError);
}

TEST_CASE("reachable_set examples") {
    Digraph one_arc = Digraph::from_arcs({{7, 9}});
    CHECK(reachable_set(one_arc, {7}) == std::vector<VertexId>{7, 9});

    Digraph k3 = bidirected_complete(3);
    CHECK(reachable_set(k3, {1}) == std::vector<VertexId>{0, 1, 2});

    Digraph isolated({4, 5}, {});
    CHECK(reachable_set(isolated, {4}) == std::vector<VertexId>{4});

    CHECK_THROWS_AS(reachable_set(one_arc, {3}), DomainError);
}

TEST_CASE("reachable_set is monotone in the source set") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(7));
        Digraph g = random_digraph(n, 0.3, rng.next());
        std::vector<VertexId> small, large;
        for (VertexId v : g.vertices()) {
            bool in_small = rng.next() & 1;
            bool in_large = in_small || (rng.next() & 1);
            if (in_small)
                small.push_back(v);
            if (in_large)
                large.push_back(v);
        }
        auto rs = reachable_set(g, small);
        auto rl = reachable_set(g, large);
        CHECK(std::includes(rl.begin(), rl.end(), rs.begin(), rs.end()));
    }
}

TEST_CASE("strongly connected components in condensation order") {
    Digraph path = directed_path(3);
    auto comps = strongly_connected_components(path);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<VertexId>{0});
    CHECK(comps[1] == std::vector<VertexId>{1});
    CHECK(comps[2] == std::vector<VertexId>{2});

    Digraph k2 = Digraph::from_arcs({{0, 1}, {1, 0}});
    comps = strongly_connected_components(k2);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == std::vector<VertexId>{0, 1});

    Digraph mixed = Digraph::from_arcs({{0, 1}, {1, 0}, {1, 2}});
    comps = strongly_connected_components(mixed);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<VertexId>{0, 1});
    CHECK(comps[1] == std::vector<VertexId>{2});

    auto terminals = terminal_components(mixed, comps);
    REQUIRE(terminals.size() == 1);
    CHECK(comps[terminals[0]] == std::vector<VertexId>{2});
}

TEST_CASE("scc output partitions the vertex set and respects arcs") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(8));
        Digraph g = random_digraph(n, 0.35, rng.next());
        auto comps = strongly_connected_components(g);
        std::vector<VertexId> all;
        std::map<VertexId, std::size_t> comp_of;
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (VertexId v : comps[c]) {
                all.push_back(v);
                comp_of[v] = c;
            }
        std::sort(all.begin(), all.end());
        CHECK(all == g.vertices());
        for (const auto& [u, v] : g.arcs())
            CHECK(comp_of[u] <= comp_of[v]); // arcs never go backwards
    }
}

TEST_CASE("canonical form is invariant under relabeling") {
    Digraph n4 = Digraph::from_arcs({{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {0, 2}, {3, 1}});
    CanonicalForm base = canonical_form(n4);
    SplitMix64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Digraph shuffled = random_relabel(n4, rng);
        CHECK(canonical_form(shuffled).bytes == base.bytes);
    }
    // Also under non-contiguous ids.
    Digraph renamed = relabel(n4, {{0, 10}, {1, 77}, {2, 3}, {3, 40}});
    CHECK(canonical_form(renamed).bytes == base.bytes);
}

TEST_CASE("canonical form distinguishes graphs") {
    Digraph k3 = bidirected_complete(3);
    Digraph n4 = Digraph::from_arcs({{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {0, 2}, {3, 1}});
    CHECK(canonical_form(k3).bytes != canonical_form(n4).bytes);

    // Same degree sequences, different structure.
    Digraph c6 = directed_cycle(6);
    Digraph two_c3({0, 1, 2, 3, 4, 5},
                   {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    CHECK(canonical_form(c6).bytes != canonical_form(two_c3).bytes);
}

TEST_CASE("the two orientations of a 3-cycle are isomorphic") {
    Digraph cw = Digraph::from_arcs({{0, 1}, {1, 2}, {2, 0}});
    Digraph ccw = Digraph::from_arcs({{0, 2}, {2, 1}, {1, 0}});
    CHECK(canonical_form(cw).bytes == canonical_form(ccw).bytes);
}

TEST_CASE("canonical form on random graphs survives random permutation") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(8));
        Digraph g = random_digraph(n, 0.4, rng.next());
        Digraph h = random_relabel(g, rng);
        CHECK(canonical_form(g).bytes == canonical_form(h).bytes);
        CHECK(isomorphic(g, h));
        auto iso = find_isomorphism(g, h);
        REQUIRE(iso.has_value());
        for (const auto& [u, v] : g.arcs())
            CHECK(h.has_arc(iso->at(u), iso->at(v)));
    }
}

TEST_CASE("canonical form capacity bound") {
    std::vector<VertexId> vs(11);
    for (int i = 0; i < 11; ++i)
        vs[i] = i;
    Digraph big(vs, {});
    CHECK_THROWS_AS(canonical_form(big), CapacityError);
    CHECK_NOTHROW(canonical_form(big, 12));
}

TEST_CASE("empty digraph basics") {
    Digraph empty;
    CHECK(empty.empty());
    CHECK(canonical_form(empty).bytes.size() == 1);
    CHECK(strongly_connected_components(empty).empty());
    CHECK(is_acyclic(empty));
}
