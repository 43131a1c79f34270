#ifndef KELLY_ELIMINATION_HPP
#define KELLY_ELIMINATION_HPP

#include <vector>

#include "kelly/minor_ops.hpp"

namespace kelly {

/// A directed elimination ordering with its per-step support sets.
/// supports[i] is the out-neighborhood of order[i] in the elimination graph
/// right before order[i] is removed; width is the largest support size.
struct EliminationOrdering {
    std::vector<VertexId> order;
    std::vector<std::vector<VertexId>> supports;
    int width = 0;
};

/// Deletes v and adds a shortcut arc (u,w) for every in-neighbor u and
/// out-neighbor w of v with u != w.
Digraph eliminate_vertex(const Digraph& g, VertexId v);

/// Width of a given ordering, computed by stepping the elimination graphs.
EliminationOrdering ordering_width(const Digraph& g, const std::vector<VertexId>& order);

/// supp(v, eliminated): vertices outside eliminated+{v} reachable from v by
/// a directed path whose internal vertices all lie in eliminated.  Equals
/// the out-degree of v after eliminating that set in any order.
std::vector<VertexId> support_set(const Digraph& g, VertexId v,
                                  const std::vector<VertexId>& eliminated);

inline constexpr int kKellyWidthDefaultMaxN = 18;

struct KellyWidthResult {
    int width = 0; // Kelly-width = best elimination width + 1 (0 for the null digraph)
    EliminationOrdering ordering;
};

/// Exact Kelly-width by dynamic programming over vertex subsets, with a
/// realizing ordering reconstructed from the table.
KellyWidthResult exact_kelly_width(const Digraph& g, int max_n = kKellyWidthDefaultMaxN);

/// What remains after exhaustively eliminating vertices of out-degree <= k,
/// with the peel recorded as minor operations (valid because eliminating at
/// out-degree 0 is a vertex deletion and at out-degree 1 an out-contraction).
struct ResidualCore {
    Digraph core;
    std::vector<MinorOperation> peeled;
};

struct RecognitionResult {
    bool recognized = false;
    EliminationOrdering ordering; // set when recognized
    ResidualCore residual;        // residual.core empty iff recognized
};

/// Greedy recognition of partial k-DAGs for k in {0,1}, where the greedy
/// peel is exact: smallest-id vertex of out-degree <= k first.
RecognitionResult recognize_partial_k(const Digraph& g, int k);

} // namespace kelly

#endif
