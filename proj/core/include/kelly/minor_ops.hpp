#ifndef KELLY_MINOR_OPS_HPP
#define KELLY_MINOR_OPS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "kelly/canonical.hpp"
#include "kelly/digraph.hpp"

namespace kelly {

/// The five directed-minor operations.  args reference live vertex ids in
/// the graph the operation is applied to:
///   DeleteVertex  [v]
///   DeleteEdge    [u, v]
///   OutContract   [u, v]   tail u is deleted, v survives
///   InContract    [u, v]   head v is deleted, u survives
///   ContractCycle [v1..vl] directed cycle, l >= 2; fresh vertex = max id + 1
enum class OpKind { DeleteVertex, DeleteEdge, ContractCycle, OutContract, InContract };

struct MinorOperation {
    OpKind kind;
    std::vector<VertexId> args;

    bool operator==(const MinorOperation&) const = default;
};

std::string op_kind_name(OpKind kind);
OpKind op_kind_from_name(const std::string& name);

Digraph delete_vertex(const Digraph& g, VertexId v);
Digraph delete_edge(const Digraph& g, VertexId u, VertexId v);

/// Deletes the tail u; in-arcs (x,u) become (x,v); all out-arcs of u drop.
Digraph out_contract(const Digraph& g, VertexId u, VertexId v);

/// Deletes the head v; out-arcs (v,x) become (u,x); all in-arcs of v drop.
Digraph in_contract(const Digraph& g, VertexId u, VertexId v);

/// Identifies a directed cycle of distinct vertices into a fresh vertex,
/// keeping outside incidences.  Length-2 cycles (bidirected edges) allowed.
Digraph contract_cycle(const Digraph& g, const std::vector<VertexId>& cycle);

Digraph apply(const Digraph& g, const MinorOperation& op);

/// Replayable proof that claimed_result is a directed minor of some source
/// graph.  vertex_map sends each claimed_result vertex to the surviving
/// source-graph vertex; it may be empty, in which case replay checks
/// isomorphism by canonical forms alone.
struct WitnessScript {
    std::vector<MinorOperation> steps;
    Digraph claimed_result;
    std::unordered_map<VertexId, VertexId> vertex_map;
};

struct ReplayResult {
    Digraph final;
    bool isomorphic;
};

/// Applies the steps in order (throwing ReplayError with the failing step
/// index on any invalid step) and checks the outcome against
/// claimed_result.  A nonempty vertex_map must be an exact isomorphism.
ReplayResult replay(const Digraph& g, const WitnessScript& script);

} // namespace kelly

#endif
