// End-to-end acceptance suite.  Each test case checks one criterion at its
// stated sample sizes and tolerance (all exact) and prints one PASS/FAIL
// line; the whole binary is expected to stay green.

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <cstdio>

#include "helpers.hpp"
#include "kelly/canonical.hpp"
#include "kelly/elimination.hpp"
#include "kelly/extractor.hpp"
#include "kelly/game.hpp"
#include "kelly/genlab.hpp"
#include "kelly/kelly_decomposition.hpp"
#include "kelly/minor_oracle.hpp"

using namespace kelly;
using namespace kelly::testing;

namespace {

void report(int id, const char* summary, bool ok) {
    std::printf("[acceptance] criterion %d (%s): %s\n", id, summary, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
}

int exhaustive_best_ordering_width(const Digraph& g) {
    std::vector<VertexId> order = g.vertices();
    int best = std::numeric_limits<int>::max();
    do {
        best = std::min(best, ordering_width(g, order).width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace

TEST_CASE("criterion 1: obstruction-free is exactly partial 1-DAG") {
    bool ok = true;
    long long recognized = 0, obstructed = 0;
    for (int n = 1; n <= 4 && ok; ++n)
        for_each_digraph_class(n, [&](const Digraph& g) {
            bool is_partial = recognize_partial_k(g, 1).recognized;
            bool has_obstruction = contains_any_obstruction(g).found;
            (is_partial ? recognized : obstructed) += 1;
            if (is_partial == has_obstruction)
                ok = false;
            return ok;
        });
    SplitMix64 rng(101);
    const double probs[] = {0.15, 0.25, 0.35, 0.5};
    for (int i = 0; i < 2000 && ok; ++i) {
        int n = 5 + i % 3;
        Digraph g = random_digraph(n, probs[i % 4], rng.next());
        bool is_partial = recognize_partial_k(g, 1).recognized;
        bool has_obstruction = contains_any_obstruction(g).found;
        (is_partial ? recognized : obstructed) += 1;
        if (is_partial == has_obstruction)
            ok = false;
    }
    // Both verdict classes must actually occur for the check to mean much.
    ok = ok && recognized > 100 && obstructed > 100;
    report(1, "partial 1-DAG iff no K3/N4/M5 minor", ok);
    CHECK(ok);
}

TEST_CASE("criterion 2: DAG iff no K2 minor") {
    bool ok = true;
    for (int n = 1; n <= 4 && ok; ++n)
        for_each_digraph_class(n, [&](const Digraph& g) {
            if (is_acyclic(g) != !contains_minor(g, obstruction_k2()).contains)
                ok = false;
            return ok;
        });
    SplitMix64 rng(202);
    for (int i = 0; i < 1000 && ok; ++i) {
        int n = 2 + i % 6; // up to 7
        Digraph g = random_digraph(n, 0.1 + 0.1 * (i % 4), rng.next());
        bool dag = is_acyclic(g);
        bool k2_free = !contains_minor(g, obstruction_k2()).contains;
        if (dag != k2_free)
            ok = false;
    }
    report(2, "partial 0-DAG iff no K2 minor", ok);
    CHECK(ok);
}

TEST_CASE("criterion 3: width, cops, decomposition and orderings agree") {
    bool ok = true;
    auto check_graph = [&](const Digraph& g) {
        KellyWidthResult kw = exact_kelly_width(g);
        if (kw.width != min_cops(g))
            ok = false;
        if (kw.width != exhaustive_best_ordering_width(g) + 1)
            ok = false;
        KellyDecomposition d = build_decomposition(g, kw.ordering);
        DecompositionVerdict verdict = validate_decomposition(g, d);
        if (!verdict.valid || verdict.width != kw.width)
            ok = false;
        return ok;
    };
    for (int n = 1; n <= 4 && ok; ++n)
        for_each_digraph_class(n, check_graph);
    SplitMix64 rng(303);
    for (int i = 0; i < 200 && ok; ++i) {
        int n = 2 + i % 5; // up to 6
        check_graph(random_digraph(n, 0.15 + 0.1 * (i % 4), rng.next()));
    }
    report(3, "kelly-width = min cops = decomposition width = 1 + best ordering", ok);
    CHECK(ok);
}

TEST_CASE("criterion 4: Kelly-width is monotone under single operations") {
    bool ok = true;
    SplitMix64 rng(404);
    int pairs = 0;
    while (pairs < 2000 && ok) {
        int n = 2 + static_cast<int>(rng.next_below(6)); // up to 7
        Digraph g = random_digraph(n, 0.15 + 0.1 * (pairs % 5), rng.next());
        auto ops = enumerate_operations(g);
        if (ops.empty())
            continue;
        Digraph h = apply(g, ops[rng.next_below(ops.size())]);
        if (exact_kelly_width(h).width > exact_kelly_width(g).width)
            ok = false;
        ++pairs;
    }
    report(4, "single minor operations never raise Kelly-width", ok);
    CHECK(ok);
}

TEST_CASE("criterion 5: K3, N4, M5 are minimal obstructions of width 3") {
    bool ok = true;
    for (const char* name : {"k3", "n4", "m5"}) {
        const Digraph& h = obstruction_by_name(name);
        if (!is_minimal_obstruction(h, 1))
            ok = false;
        if (exact_kelly_width(h).width != 3)
            ok = false;
    }
    report(5, "catalog members minimal at k=1 with Kelly-width 3", ok);
    CHECK(ok);
}

TEST_CASE("criterion 6: extraction is total, sound and oracle-consistent") {
    bool ok = true;
    ExtractStats stats;
    SplitMix64 rng(606);
    for (int i = 0; i < 1000 && ok; ++i) {
        int n = 3 + i % 10; // 3..12
        Digraph g = random_min_out_degree_2(n, rng.next(), n <= 6 ? 0.3 : 0.2);
        WitnessScript script = extract(g, &stats);
        bool known_target = false;
        for (const char* name : {"k3", "n4", "m5"})
            if (isomorphic(script.claimed_result, obstruction_by_name(name)))
                known_target = true;
        if (!known_target || !replay(g, script).isomorphic)
            ok = false;
        if (ok && n <= 7 && !contains_minor(g, script.claimed_result).contains)
            ok = false;
    }
    if (stats.oracle_fallbacks > 0)
        std::printf("[acceptance]   note: %d oracle fallback(s) during extraction\n",
                    stats.oracle_fallbacks);
    report(6, "1000 extractions replay to their claimed target", ok);
    CHECK(ok);
}

TEST_CASE("criterion 7: supports equal elimination out-degrees everywhere") {
    bool ok = true;
    SplitMix64 rng(707);
    for (int i = 0; i < 200 && ok; ++i) {
        int n = 2 + i % 6; // up to 7
        Digraph g = random_digraph(n, 0.2 + 0.1 * (i % 4), rng.next());
        const auto& vs = g.vertices();
        for (std::size_t vi = 0; vi < vs.size() && ok; ++vi) {
            VertexId v = vs[vi];
            std::vector<VertexId> others;
            for (VertexId w : vs)
                if (w != v)
                    others.push_back(w);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()) && ok;
                 ++mask) {
                std::vector<VertexId> subset;
                for (std::size_t bit = 0; bit < others.size(); ++bit)
                    if (mask >> bit & 1)
                        subset.push_back(others[bit]);
                auto supp = support_set(g, v, subset);
                for (int rep = 0; rep < 3 && ok; ++rep) {
                    std::vector<VertexId> order = subset;
                    for (std::size_t s = order.size(); s > 1; --s)
                        std::swap(order[s - 1], order[rng.next_below(s)]);
                    Digraph reduced = g;
                    for (VertexId w : order)
                        reduced = eliminate_vertex(reduced, w);
                    if (reduced.out_neighbors(v) != supp)
                        ok = false;
                }
            }
        }
    }
    report(7, "supp(v,T) matches elimination out-degrees in 3 random orders", ok);
    CHECK(ok);
}

TEST_CASE("criterion 8: generated partial k-DAGs respect the width bound") {
    bool ok = true;
    SplitMix64 rng(808);
    for (int i = 0; i < 500 && ok; ++i) {
        int k = i % 3;
        int n = k + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(11 - k)));
        Digraph g = generate_partial_kdag(n, k, rng.next());
        if (exact_kelly_width(g).width > k + 1)
            ok = false;
    }
    report(8, "500 generated partial k-DAGs have Kelly-width <= k+1", ok);
    CHECK(ok);
}
