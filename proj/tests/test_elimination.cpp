#include <doctest.h>

#include <algorithm>
#include <limits>

#include "helpers.hpp"
#include "kelly/canonical.hpp"
#include "kelly/elimination.hpp"
#include "kelly/minor_oracle.hpp"

using namespace kelly;
using namespace kelly::testing;

namespace {

// Independent oracle: the least ordering width over every permutation.
int brute_force_best_width(const Digraph& g) {
    std::vector<VertexId> order = g.vertices();
    int best = std::numeric_limits<int>::max();
    do {
        best = std::min(best, ordering_width(g, order).width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace

TEST_CASE("eliminate_vertex adds shortcut arcs") {
    Digraph path({0, 1, 2}, {{0, 1}, {1, 2}});
    Digraph after = eliminate_vertex(path, 1);
    CHECK(after.arcs() == std::vector<Arc>{{0, 2}});

    Digraph k2 = Digraph::from_arcs({{0, 1}, {1, 0}});
    after = eliminate_vertex(k2, 0);
    CHECK(after.vertices() == std::vector<VertexId>{1});
    CHECK(after.arcs().empty());

    Digraph k3 = bidirected_complete(3);
    after = eliminate_vertex(k3, 1);
    CHECK(isomorphic(after, obstruction_k2()));

    CHECK_THROWS_AS(eliminate_vertex(path, 7), DomainError);
}

TEST_CASE("ordering_width examples") {
    // Sinks-first elimination of a DAG never sees an out-arc.
    Digraph path = directed_path(3);
    EliminationOrdering sink_first = ordering_width(path, {2, 1, 0});
    CHECK(sink_first.width == 0);

    Digraph k3 = bidirected_complete(3);
    std::vector<VertexId> order = {0, 1, 2};
    do {
        CHECK(ordering_width(k3, order).width == 2);
    } while (std::next_permutation(order.begin(), order.end()));

    EliminationOrdering n4_order = ordering_width(obstruction_n4(), {0, 1, 2, 3});
    CHECK(n4_order.width == 2);
    CHECK(n4_order.supports[0] == std::vector<VertexId>{1, 2});

    CHECK_THROWS_AS(ordering_width(path, {0, 1}), DomainError);
    CHECK_THROWS_AS(ordering_width(path, {0, 1, 1}), DomainError);
}

TEST_CASE("exact_kelly_width on the canonical examples") {
    CHECK(exact_kelly_width(bidirected_complete(3)).width == 3);
    CHECK(exact_kelly_width(obstruction_n4()).width == 3);
    CHECK(exact_kelly_width(obstruction_m5()).width == 3);
    CHECK(exact_kelly_width(Digraph::from_arcs({{0, 1}, {1, 0}})).width == 2);
    CHECK(exact_kelly_width(directed_cycle(3)).width == 2);
    CHECK(exact_kelly_width(directed_path(4)).width == 1);
    Digraph dag({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(exact_kelly_width(dag).width == 1);
    CHECK(exact_kelly_width(Digraph{}).width == 0);
}

TEST_CASE("exact_kelly_width returns a realizing ordering") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(7));
        Digraph g = random_digraph(n, 0.4, rng.next());
        KellyWidthResult result = exact_kelly_width(g);
        CHECK(result.ordering.width + 1 == result.width);
        CHECK(ordering_width(g, result.ordering.order).width == result.ordering.width);
    }
}

TEST_CASE("exact_kelly_width equals the exhaustive ordering minimum") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(4)); // up to 5
        Digraph g = random_digraph(n, 0.45, rng.next());
        CHECK(exact_kelly_width(g).width == brute_force_best_width(g) + 1);
    }
}

TEST_CASE("support sets match elimination out-degrees in any order") {
    SplitMix64 rng(9001);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(6)); // up to 7
        Digraph g = random_digraph(n, 0.4, rng.next());
        const auto& vs = g.vertices();
        for (int rep = 0; rep < 8; ++rep) {
            VertexId v = vs[rng.next_below(vs.size())];
            std::vector<VertexId> eliminated;
            for (VertexId w : vs)
                if (w != v && (rng.next() & 1))
                    eliminated.push_back(w);
            // Eliminate in a random order and compare against supp.
            std::vector<VertexId> order = eliminated;
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[rng.next_below(i)]);
            Digraph reduced = g;
            for (VertexId w : order)
                reduced = eliminate_vertex(reduced, w);
            auto supp = support_set(g, v, eliminated);
            CHECK(reduced.out_neighbors(v) == supp);
        }
    }
}

TEST_CASE("recognize_partial_k on the stated examples") {
    CHECK(recognize_partial_k(directed_path(3), 0).recognized);

    auto c3_0 = recognize_partial_k(directed_cycle(3), 0);
    CHECK_FALSE(c3_0.recognized);
    CHECK(c3_0.residual.core == directed_cycle(3));

    CHECK(recognize_partial_k(directed_cycle(3), 1).recognized);

    auto n4_1 = recognize_partial_k(obstruction_n4(), 1);
    CHECK_FALSE(n4_1.recognized);
    CHECK(n4_1.residual.core == obstruction_n4());
    CHECK(n4_1.residual.peeled.empty());

    CHECK_THROWS_AS(recognize_partial_k(directed_path(3), 2), DomainError);
}

TEST_CASE("recognition orderings respect the width bound") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(7));
        Digraph g = random_digraph(n, 0.3, rng.next());
        for (int k : {0, 1}) {
            auto result = recognize_partial_k(g, k);
            if (result.recognized) {
                CHECK(result.ordering.width <= k);
                CHECK(result.ordering.order.size() == g.vertex_count());
            } else {
                for (VertexId v : result.residual.core.vertices())
                    CHECK(result.residual.core.out_degree(v) >= k + 1);
            }
        }
    }
}

TEST_CASE("the peel replays onto the residual core") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(6));
        Digraph g = random_digraph(n, 0.35, rng.next());
        auto result = recognize_partial_k(g, 1);
        Digraph cur = g;
        for (const MinorOperation& op : result.residual.peeled)
            cur = apply(cur, op);
        CHECK(cur == result.residual.core);
    }
}

TEST_CASE("recognition agrees with exact Kelly-width") {
    SplitMix64 rng(1212);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(6));
        Digraph g = random_digraph(n, 0.4, rng.next());
        int kw = exact_kelly_width(g).width;
        CHECK(recognize_partial_k(g, 0).recognized == (kw <= 1));
        CHECK(recognize_partial_k(g, 0).recognized == is_acyclic(g));
        CHECK(recognize_partial_k(g, 1).recognized == (kw <= 2));
    }
}

TEST_CASE("Kelly-width is monotone under single operations") {
    SplitMix64 rng(616);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(5));
        Digraph g = random_digraph(n, 0.4, rng.next());
        auto ops = enumerate_operations(g);
        if (ops.empty())
            continue;
        Digraph h = apply(g, ops[rng.next_below(ops.size())]);
        CHECK(exact_kelly_width(h).width <= exact_kelly_width(g).width);
        ++done;
    }
    CHECK(done == 60);
}

TEST_CASE("capacity bound") {
    std::vector<VertexId> vs(19);
    for (int i = 0; i < 19; ++i)
        vs[i] = i;
    CHECK_THROWS_AS(exact_kelly_width(Digraph(vs, {})), CapacityError);
}
