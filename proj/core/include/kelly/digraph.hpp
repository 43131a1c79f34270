#ifndef KELLY_DIGRAPH_HPP
#define KELLY_DIGRAPH_HPP

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "kelly/errors.hpp"

namespace kelly {

using VertexId = int;
using Arc = std::pair<VertexId, VertexId>;

/// Finite simple digraph: no self-loops, no parallel arcs.  Both arcs (u,v)
/// and (v,u) may be present (a bidirected edge).  Vertex ids are opaque and
/// preserved by every operation, so witness scripts can refer to them.
///
/// Values are immutable after construction; all algorithms are pure
/// functions returning new values.  Vertices and arcs are kept sorted, so
/// iteration order (and thus every algorithm built on it) is deterministic.
class Digraph {
public:
    Digraph() = default;

    /// Duplicate vertices/arcs collapse (set semantics).  Self-loops and
    /// arcs with endpoints outside the vertex set are rejected.
    Digraph(std::vector<VertexId> vertices, std::vector<Arc> arcs);

    /// Convenience: vertex set = arc endpoints.
    static Digraph from_arcs(std::initializer_list<Arc> arcs);
    static Digraph from_arcs(const std::vector<Arc>& arcs);

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(VertexId v) const;
    bool has_arc(VertexId u, VertexId v) const;

    /// Sorted by id.
    std::vector<VertexId> out_neighbors(VertexId v) const;
    std::vector<VertexId> in_neighbors(VertexId v) const;
    int out_degree(VertexId v) const;
    int in_degree(VertexId v) const;

    /// Largest id in use; fresh vertices take max_vertex_id() + 1.
    VertexId max_vertex_id() const;

    void require_vertex(VertexId v) const;
    void require_arc(VertexId u, VertexId v) const;

    bool operator==(const Digraph& other) const = default;

private:
    std::vector<VertexId> vertices_; // sorted, unique
    std::vector<Arc> arcs_;          // sorted lexicographically, unique
};

/// Reach_g(sources): every vertex with a directed path from some source
/// (sources included).  Sorted output.
std::vector<VertexId> reachable_set(const Digraph& g, const std::vector<VertexId>& sources);

/// Strongly connected components in topological order of the condensation:
/// condensation arcs only go from earlier-listed to later-listed components.
std::vector<std::vector<VertexId>> strongly_connected_components(const Digraph& g);

/// Component indices (into the list above) with no outgoing condensation arc.
std::vector<std::size_t> terminal_components(const Digraph& g,
                                             const std::vector<std::vector<VertexId>>& sccs);

bool is_acyclic(const Digraph& g);

/// Dense bitmask view for the exact algorithms (n <= 64): index i maps to
/// ids()[i], out_mask[i]/in_mask[i] hold neighbor bits.
struct DenseDigraph {
    std::vector<VertexId> ids; // sorted original ids; index -> id
    std::vector<std::uint64_t> out_mask;
    std::vector<std::uint64_t> in_mask;

    explicit DenseDigraph(const Digraph& g);
    int index_of(VertexId v) const; // -1 when absent
    std::size_t size() const { return ids.size(); }
};

} // namespace kelly

#endif
