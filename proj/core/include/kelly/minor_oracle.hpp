#ifndef KELLY_MINOR_ORACLE_HPP
#define KELLY_MINOR_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "kelly/minor_ops.hpp"

namespace kelly {

/// The canonical obstruction graphs, on vertex ids 0..n-1.
///   k2: both arcs between two vertices.
///   k3: complete digraph on three vertices.
///   n4: bidirected path 0-1-2-3 plus arcs (0,2) and (3,1).
///   m5: bidirected path 0-1-2-3-4 plus arcs (0,2) and (4,2).
/// Every vertex of n4 and m5 has out-degree exactly 2.
const Digraph& obstruction_k2();
const Digraph& obstruction_k3();
const Digraph& obstruction_n4();
const Digraph& obstruction_m5();
const Digraph& obstruction_by_name(const std::string& name); // "k2".."m5"

inline constexpr int kMinorDefaultMaxN = 8;
inline constexpr int kMinimalityDefaultMaxN = 6;

/// Every applicable single operation, deterministically ordered: vertex
/// deletions by id, edge deletions lexicographically, then out-contractions,
/// in-contractions, and cycle contractions (shortest first, each cycle
/// rotated to start at its smallest vertex).
std::vector<MinorOperation> enumerate_operations(const Digraph& g);

/// All simple directed cycles, each listed once, rotated to start at its
/// smallest vertex; lengths 2..|V|.
std::vector<std::vector<VertexId>> enumerate_simple_cycles(const Digraph& g);

struct MinorVerdict {
    bool contains;
    std::optional<WitnessScript> witness; // set iff contains
};

/// Ground-truth containment h <= g by exhaustive memoized search over
/// operation sequences.  Negative verdicts are cached per canonical form of
/// the intermediate graphs; every positive verdict carries a witness script
/// that replays from g to an isomorph of h.
MinorVerdict contains_minor(const Digraph& g, const Digraph& h, int max_n = kMinorDefaultMaxN);

struct ObstructionVerdict {
    bool found;
    std::string name; // "k3", "n4" or "m5" when found
    std::optional<WitnessScript> witness;
};

/// First obstruction found, probing K3 then N4 then M5.
ObstructionVerdict contains_any_obstruction(const Digraph& g, int max_n = kMinorDefaultMaxN);

/// True iff h is not a partial k-DAG but every single-operation minor of h
/// is one (k in {0,1}; recognition is exact there).
bool is_minimal_obstruction(const Digraph& h, int k, int max_n = kMinimalityDefaultMaxN);

} // namespace kelly

#endif
