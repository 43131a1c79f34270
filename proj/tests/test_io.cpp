#include <doctest.h>

#include "helpers.hpp"
#include "kelly/io.hpp"
#include "kelly/minor_oracle.hpp"

using namespace kelly;
using namespace kelly::testing;

TEST_CASE("edge list parsing") {
    Digraph g = parse_edge_list("3 2\n0 1\n1 2\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.arcs() == std::vector<Arc>{{0, 1}, {1, 2}});

    CHECK(parse_edge_list("2 0\n").arc_count() == 0);
    CHECK(parse_edge_list("0 0\n").empty());
}

TEST_CASE("edge list parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_edge_list(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("nonsense\n") == 1);
    CHECK(line_of("2 1\n0 0\n") == 2);
    CHECK(line_of("2 2\n0 1\n0 1\n") == 3);  // duplicate arc
    CHECK(line_of("2 1\n0 5\n") == 2);       // out of range
    CHECK(line_of("2 1\n0 1 9\n") == 2);     // trailing token
    CHECK_THROWS_AS(parse_edge_list(""), ParseError);
    CHECK_THROWS_AS(parse_edge_list("3 2\n0 1\n"), ParseError); // arc count mismatch
}

TEST_CASE("edge list round trip") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        Digraph g = random_digraph(1 + static_cast<int>(rng.next_below(9)), 0.4, rng.next());
        Digraph back = parse_edge_list(write_edge_list(g));
        CHECK(back == g);
    }
}

TEST_CASE("dot export marks bidirected pairs once") {
    Digraph g = Digraph::from_arcs({{0, 1}, {1, 0}, {1, 2}});
    std::string dot = to_dot(g);
    CHECK(dot.find("0 -> 1 [dir=both];") != std::string::npos);
    CHECK(dot.find("1 -> 2;") != std::string::npos);
    CHECK(dot.find("1 -> 0") == std::string::npos);
}

TEST_CASE("witness scripts round trip through JSON") {
    Digraph c3 = directed_cycle(3);
    auto verdict = contains_minor(c3, obstruction_k2());
    REQUIRE(verdict.contains);
    nlohmann::json j = witness_to_json(*verdict.witness, "k2");
    WitnessScript back = witness_from_json(j);
    CHECK(back.steps == verdict.witness->steps);
    CHECK(back.claimed_result == obstruction_k2());
    CHECK(back.vertex_map == verdict.witness->vertex_map);
    CHECK(replay(c3, back).isomorphic);
}

TEST_CASE("witness JSON embeds non-catalog targets") {
    Digraph g = directed_path(3);
    WitnessScript script;
    script.steps = {{OpKind::DeleteVertex, {2}}};
    script.claimed_result = directed_path(2);
    script.vertex_map = {{0, 0}, {1, 1}};
    nlohmann::json j = witness_to_json(script, "pattern");
    CHECK(j.contains("target_graph"));
    WitnessScript back = witness_from_json(j);
    CHECK(back.claimed_result == directed_path(2));
    CHECK(replay(g, back).isomorphic);
}

TEST_CASE("decompositions round trip through JSON") {
    Digraph k3 = bidirected_complete(3);
    KellyDecomposition d = build_decomposition(k3, exact_kelly_width(k3).ordering);
    nlohmann::json j = decomposition_to_json(d);
    KellyDecomposition back = decomposition_from_json(j);
    CHECK(back.nodes == d.nodes);
    CHECK(back.edges == d.edges);
    CHECK(back.w_bags == d.w_bags);
    CHECK(back.x_bags == d.x_bags);
    CHECK(back.child_order == d.child_order);
    CHECK(back.root_order == d.root_order);
    CHECK(validate_decomposition(k3, back).valid);
}
