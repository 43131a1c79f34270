#ifndef KELLY_CANONICAL_HPP
#define KELLY_CANONICAL_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kelly/digraph.hpp"

namespace kelly {

/// Isomorphism-invariant key for a digraph.  bytes holds the vertex count
/// followed by the packed adjacency matrix of the lexicographically least
/// relabeling, so two digraphs have equal bytes iff they are isomorphic
/// (exact; permutations are enumerated exhaustively within refinement
/// classes).  labeling[i] is the original vertex at canonical position i;
/// it is not part of the key.
struct CanonicalForm {
    std::string bytes;
    std::pair<int, int> size_hint{0, 0}; // (vertex count, arc count)
    std::vector<VertexId> labeling;

    bool operator==(const CanonicalForm& other) const { return bytes == other.bytes; }
};

inline constexpr int kCanonicalDefaultMaxN = 10;

CanonicalForm canonical_form(const Digraph& g, int max_n = kCanonicalDefaultMaxN);

bool isomorphic(const Digraph& a, const Digraph& b, int max_n = kCanonicalDefaultMaxN);

/// Explicit isomorphism a-vertex -> b-vertex, when one exists.
std::optional<std::unordered_map<VertexId, VertexId>>
find_isomorphism(const Digraph& a, const Digraph& b, int max_n = kCanonicalDefaultMaxN);

} // namespace kelly

#endif
