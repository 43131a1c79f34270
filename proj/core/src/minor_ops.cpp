#include "kelly/minor_ops.hpp"

#include <algorithm>

namespace kelly {

std::string op_kind_name(OpKind kind) {
    switch (kind) {
    case OpKind::DeleteVertex: return "delete_vertex";
    case OpKind::DeleteEdge: return "delete_edge";
    case OpKind::ContractCycle: return "contract_cycle";
    case OpKind::OutContract: return "out_contract";
    case OpKind::InContract: return "in_contract";
    }
    throw DomainError("unknown operation kind");
}

OpKind op_kind_from_name(const std::string& name) {
    if (name == "delete_vertex") return OpKind::DeleteVertex;
    if (name == "delete_edge") return OpKind::DeleteEdge;
    if (name == "contract_cycle") return OpKind::ContractCycle;
    if (name == "out_contract") return OpKind::OutContract;
    if (name == "in_contract") return OpKind::InContract;
    throw DomainError("unknown operation kind '" + name + "'");
}

Digraph delete_vertex(const Digraph& g, VertexId v) {
    g.require_vertex(v);
    std::vector<VertexId> vs;
    for (VertexId w : g.vertices())
        if (w != v)
            vs.push_back(w);
    std::vector<Arc> arcs;
    for (const auto& [a, b] : g.arcs())
        if (a != v && b != v)
            arcs.push_back({a, b});
    return Digraph(std::move(vs), std::move(arcs));
}

Digraph delete_edge(const Digraph& g, VertexId u, VertexId v) {
    g.require_arc(u, v);
    std::vector<Arc> arcs;
    for (const auto& arc : g.arcs())
        if (arc != Arc{u, v})
            arcs.push_back(arc);
    return Digraph(g.vertices(), std::move(arcs));
}

Digraph out_contract(const Digraph& g, VertexId u, VertexId v) {
    g.require_arc(u, v);
    std::vector<VertexId> vs;
    for (VertexId w : g.vertices())
        if (w != u)
            vs.push_back(w);
    std::vector<Arc> arcs;
    for (const auto& [a, b] : g.arcs()) {
        if (a == u)
            continue; // out-arcs of the tail drop
        if (b == u) {
            if (a != v)
                arcs.push_back({a, v}); // (a,v) with a == v would be a loop
        } else {
            arcs.push_back({a, b});
        }
    }
    return Digraph(std::move(vs), std::move(arcs));
}

Digraph in_contract(const Digraph& g, VertexId u, VertexId v) {
    g.require_arc(u, v);
    std::vector<VertexId> vs;
    for (VertexId w : g.vertices())
        if (w != v)
            vs.push_back(w);
    std::vector<Arc> arcs;
    for (const auto& [a, b] : g.arcs()) {
        if (b == v)
            continue; // in-arcs of the head drop
        if (a == v) {
            if (b != u)
                arcs.push_back({u, b});
        } else {
            arcs.push_back({a, b});
        }
    }
    return Digraph(std::move(vs), std::move(arcs));
}

Digraph contract_cycle(const Digraph& g, const std::vector<VertexId>& cycle) {
    if (cycle.size() < 2)
        throw DomainError("contract_cycle: cycle must have length >= 2");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        VertexId a = cycle[i];
        VertexId b = cycle[(i + 1) % cycle.size()];
        g.require_arc(a, b);
    }
    std::vector<VertexId> sorted(cycle);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("contract_cycle: cycle vertices must be distinct");

    auto on_cycle = [&](VertexId v) {
        return std::binary_search(sorted.begin(), sorted.end(), v);
    };
    VertexId fresh = g.max_vertex_id() + 1;
    std::vector<VertexId> vs{fresh};
    for (VertexId w : g.vertices())
        if (!on_cycle(w))
            vs.push_back(w);
    std::vector<Arc> arcs;
    for (const auto& [a, b] : g.arcs()) {
        bool ca = on_cycle(a), cb = on_cycle(b);
        if (ca && cb)
            continue;
        if (ca)
            arcs.push_back({fresh, b});
        else if (cb)
            arcs.push_back({a, fresh});
        else
            arcs.push_back({a, b});
    }
    return Digraph(std::move(vs), std::move(arcs));
}

Digraph apply(const Digraph& g, const MinorOperation& op) {
    switch (op.kind) {
    case OpKind::DeleteVertex:
        if (op.args.size() != 1)
            throw DomainError("delete_vertex takes one argument");
        return delete_vertex(g, op.args[0]);
    case OpKind::DeleteEdge:
        if (op.args.size() != 2)
            throw DomainError("delete_edge takes two arguments");
        return delete_edge(g, op.args[0], op.args[1]);
    case OpKind::OutContract:
        if (op.args.size() != 2)
            throw DomainError("out_contract takes two arguments");
        return out_contract(g, op.args[0], op.args[1]);
    case OpKind::InContract:
        if (op.args.size() != 2)
            throw DomainError("in_contract takes two arguments");
        return in_contract(g, op.args[0], op.args[1]);
    case OpKind::ContractCycle:
        return contract_cycle(g, op.args);
    }
    throw DomainError("unknown operation kind");
}

ReplayResult replay(const Digraph& g, const WitnessScript& script) {
    Digraph current = g;
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        try {
            current = apply(current, script.steps[i]);
        } catch (const DomainError& e) {
            throw ReplayError(e.what(), i);
        }
    }
    ReplayResult result{current, false};
    const Digraph& target = script.claimed_result;
    if (!script.vertex_map.empty()) {
        // The map must be a bijection target -> result respecting arcs.
        if (script.vertex_map.size() != target.vertex_count() ||
            target.vertex_count() != result.final.vertex_count() ||
            target.arc_count() != result.final.arc_count())
            return result;
        std::vector<VertexId> image;
        for (VertexId v : target.vertices()) {
            auto it = script.vertex_map.find(v);
            if (it == script.vertex_map.end() || !result.final.has_vertex(it->second))
                return result;
            image.push_back(it->second);
        }
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            return result;
        for (const auto& [u, v] : target.arcs())
            if (!result.final.has_arc(script.vertex_map.at(u), script.vertex_map.at(v)))
                return result;
        result.isomorphic = true;
    } else {
        result.isomorphic =
            isomorphic(result.final, target,
                       std::max<int>(static_cast<int>(result.final.vertex_count()),
                                     static_cast<int>(target.vertex_count())));
    }
    return result;
}

} // namespace kelly
