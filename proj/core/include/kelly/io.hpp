#ifndef KELLY_IO_HPP
#define KELLY_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kelly/kelly_decomposition.hpp"
#include "kelly/minor_ops.hpp"

namespace kelly {

/// Edge-list text format: first line "n m", then m lines "u v" with
/// 0 <= u,v < n and u != v; duplicate lines are rejected with the line
/// number.
Digraph read_edge_list(std::istream& in);
Digraph parse_edge_list(const std::string& text);
Digraph read_edge_list_file(const std::string& path);

/// Writes the same format.  Vertex ids are compacted to 0..n-1 in sorted
/// order; graphs fresh from a generator or a file keep their ids.
std::string write_edge_list(const Digraph& g);

/// DOT export: one edge per unordered pair, with dir=both when both arcs
/// are present.
std::string to_dot(const Digraph& g);

nlohmann::json digraph_to_json(const Digraph& g);
Digraph digraph_from_json(const nlohmann::json& j);

/// Witness schema: {"target": name, "steps": [{"kind", "args"}...],
/// "vertex_map": {...}}; non-catalog targets carry a "target_graph".
nlohmann::json witness_to_json(const WitnessScript& script, const std::string& target_name);
WitnessScript witness_from_json(const nlohmann::json& j);

nlohmann::json decomposition_to_json(const KellyDecomposition& d);
KellyDecomposition decomposition_from_json(const nlohmann::json& j);

} // namespace kelly

#endif
