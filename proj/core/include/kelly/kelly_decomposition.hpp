#ifndef KELLY_KELLY_DECOMPOSITION_HPP
#define KELLY_KELLY_DECOMPOSITION_HPP

#include <map>
#include <string>
#include <vector>

#include "kelly/elimination.hpp"

namespace kelly {

/// X guards W: the sets are disjoint and no arc leaves W except into X
/// (equivalently, no directed path in G \ X starts in W and leaves it).
bool guards(const Digraph& g, const std::vector<VertexId>& x, const std::vector<VertexId>& w);

/// DAG of decomposition nodes with node bags W and guard bags X.  The
/// enumeration orders that the ordering clause quantifies over are stored
/// explicitly (child_order per node, root_order overall) so validation is
/// deterministic.
struct KellyDecomposition {
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> edges; // (parent, child)
    std::map<int, std::vector<VertexId>> w_bags;
    std::map<int, std::vector<VertexId>> x_bags;
    std::map<int, std::vector<int>> child_order;
    std::vector<int> root_order;

    int width() const; // max |W_i union X_i| over nodes, 0 when empty
};

struct DecompositionVerdict {
    bool valid = false;
    int width = 0;
    std::string violation;    // empty when valid
    int offending_node = -1;  // -1 when not tied to a node
};

/// Checks, in order:
///   partition   — the W bags are pairwise disjoint and cover V (empty bags allowed);
///   guarding    — every X_i guards the union of W bags at or below node i;
///   ordering    — for each node, the stored child order satisfies
///                 X_child ⊆ W_i ∪ X_i ∪ (cones of earlier siblings); the
///                 first stored root is unconstrained and each later root r
///                 must satisfy W_r ⊆ (cones of earlier roots), which
///                 together with the partition forces later roots' W bags
///                 empty — see the validator notes in the README.
/// Reports the first violated clause with the offending node.
DecompositionVerdict validate_decomposition(const Digraph& g, const KellyDecomposition& d);

/// Builds a decomposition from an elimination ordering: one node per
/// vertex, W = {v}, X = support of v.  The resulting width is always
/// ordering.width + 1 and the output always passes the validator; a
/// ConstructionError (InternalError) is thrown if no arrangement is found.
KellyDecomposition build_decomposition(const Digraph& g, const EliminationOrdering& ordering);

} // namespace kelly

#endif
