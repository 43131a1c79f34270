#ifndef KELLY_EXTRACTOR_HPP
#define KELLY_EXTRACTOR_HPP

#include <map>
#include <optional>
#include <string>

#include "kelly/minor_ops.hpp"

namespace kelly {

/// Working state of the obstruction extractor: the reduced graph (every
/// out-degree exactly 2, strongly connected), the operations performed so
/// far, and the directed/bidirected arc counts.  While every out-degree is
/// exactly 2, directed_count + 2 * bidirected_count == 2 * |V|.
struct ExtractionContext {
    Digraph current;
    std::vector<MinorOperation> pending_ops;
    int directed_count = 0;   // arcs (u,v) with (v,u) absent
    int bidirected_count = 0; // unordered pairs with both arcs
};

/// Trims every vertex to its two smallest out-arcs (recorded as edge
/// deletions) and restricts to a terminal strongly connected component
/// (recorded as vertex deletions).  Requires minimum out-degree >= 2.
ExtractionContext normalize(const Digraph& g);

/// Smallest vertex with arcs to both endpoints of the directed arc (u,v).
/// The arc must be present and not bidirected.
std::optional<VertexId> find_blocker(const Digraph& g, VertexId u, VertexId v);

/// Which reduction and emission rules fired, by label, plus the count of
/// oracle fallbacks (expected to stay zero; the fallback keeps extraction
/// total if a reduction chain ever escapes the structural case analysis).
struct ExtractStats {
    std::map<std::string, int> rules;
    int oracle_fallbacks = 0;
};

/// Constructive obstruction extraction: given a digraph in which every
/// vertex has out-degree >= 2, produces a witness script whose replay on g
/// yields K3, N4 or M5.  Deterministic; the returned script is re-verified
/// by replay before it is returned.
WitnessScript extract(const Digraph& g, ExtractStats* stats = nullptr);

} // namespace kelly

#endif
