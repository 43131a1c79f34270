#include "kelly/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kelly/minor_oracle.hpp"

namespace kelly {

using nlohmann::json;

Digraph read_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<Arc> arcs;
    std::set<Arc> seen;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (n < 0) {
            std::string extra;
            if (!(ls >> n >> m) || (ls >> extra))
                throw ParseError("expected header 'n m'", lineno);
            if (n < 0 || m < 0)
                throw ParseError("vertex and arc counts must be nonnegative", lineno);
            continue;
        }
        long long u, v;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra))
            throw ParseError("expected arc line 'u v'", lineno);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("vertex id out of range [0, " + std::to_string(n) + ")", lineno);
        if (u == v)
            throw ParseError("self-loop not allowed", lineno);
        Arc arc{static_cast<VertexId>(u), static_cast<VertexId>(v)};
        if (!seen.insert(arc).second)
            throw ParseError("duplicate arc", lineno);
        arcs.push_back(arc);
    }
    if (n < 0)
        throw ParseError("missing header 'n m'");
    if (static_cast<long long>(arcs.size()) != m)
        throw ParseError("expected " + std::to_string(m) + " arcs, found " +
                         std::to_string(arcs.size()));
    std::vector<VertexId> vs(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        vs[static_cast<std::size_t>(i)] = static_cast<VertexId>(i);
    return Digraph(std::move(vs), std::move(arcs));
}

Digraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

Digraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return read_edge_list(in);
}

namespace {

std::map<VertexId, int> compact_ids(const Digraph& g) {
    std::map<VertexId, int> id;
    int next = 0;
    for (VertexId v : g.vertices())
        id[v] = next++;
    return id;
}

} // namespace

std::string write_edge_list(const Digraph& g) {
    std::map<VertexId, int> id = compact_ids(g);
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.arc_count() << '\n';
    for (const auto& [u, v] : g.arcs())
        out << id[u] << ' ' << id[v] << '\n';
    return out.str();
}

std::string to_dot(const Digraph& g) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (VertexId v : g.vertices())
        out << "  " << v << ";\n";
    for (const auto& [u, v] : g.arcs()) {
        if (g.has_arc(v, u)) {
            if (u < v)
                out << "  " << u << " -> " << v << " [dir=both];\n";
        } else {
            out << "  " << u << " -> " << v << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

json digraph_to_json(const Digraph& g) {
    json j;
    j["vertices"] = g.vertices();
    json arcs = json::array();
    for (const auto& [u, v] : g.arcs())
        arcs.push_back(json::array({u, v}));
    j["arcs"] = std::move(arcs);
    return j;
}

Digraph digraph_from_json(const json& j) {
    std::vector<VertexId> vs = j.at("vertices").get<std::vector<VertexId>>();
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs"))
        arcs.push_back({a.at(0).get<VertexId>(), a.at(1).get<VertexId>()});
    return Digraph(std::move(vs), std::move(arcs));
}

json witness_to_json(const WitnessScript& script, const std::string& target_name) {
    json j;
    j["target"] = target_name;
    json steps = json::array();
    for (const MinorOperation& op : script.steps) {
        json s;
        s["kind"] = op_kind_name(op.kind);
        s["args"] = op.args;
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    json vm = json::object();
    std::map<VertexId, VertexId> ordered(script.vertex_map.begin(), script.vertex_map.end());
    for (const auto& [target, survivor] : ordered)
        vm[std::to_string(target)] = survivor;
    j["vertex_map"] = std::move(vm);
    bool catalog = target_name == "k2" || target_name == "k3" || target_name == "n4" ||
                   target_name == "m5";
    if (!catalog)
        j["target_graph"] = digraph_to_json(script.claimed_result);
    return j;
}

WitnessScript witness_from_json(const json& j) {
    WitnessScript script;
    std::string target = j.at("target").get<std::string>();
    if (j.contains("target_graph"))
        script.claimed_result = digraph_from_json(j.at("target_graph"));
    else
        script.claimed_result = obstruction_by_name(target);
    for (const auto& s : j.at("steps")) {
        MinorOperation op;
        op.kind = op_kind_from_name(s.at("kind").get<std::string>());
        op.args = s.at("args").get<std::vector<VertexId>>();
        script.steps.push_back(std::move(op));
    }
    if (j.contains("vertex_map"))
        for (const auto& [key, value] : j.at("vertex_map").items())
            script.vertex_map[std::stoi(key)] = value.get<VertexId>();
    return script;
}

json decomposition_to_json(const KellyDecomposition& d) {
    json j;
    j["nodes"] = d.nodes;
    json edges = json::array();
    for (const auto& [p, c] : d.edges)
        edges.push_back(json::array({p, c}));
    j["edges"] = std::move(edges);
    json w = json::object(), x = json::object(), co = json::object();
    for (const auto& [node, bag] : d.w_bags)
        w[std::to_string(node)] = bag;
    for (const auto& [node, bag] : d.x_bags)
        x[std::to_string(node)] = bag;
    for (const auto& [node, order] : d.child_order)
        co[std::to_string(node)] = order;
    j["W"] = std::move(w);
    j["X"] = std::move(x);
    j["child_order"] = std::move(co);
    j["root_order"] = d.root_order;
    return j;
}

KellyDecomposition decomposition_from_json(const json& j) {
    KellyDecomposition d;
    d.nodes = j.at("nodes").get<std::vector<int>>();
    for (const auto& e : j.at("edges"))
        d.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    for (const auto& [key, value] : j.at("W").items())
        d.w_bags[std::stoi(key)] = value.get<std::vector<VertexId>>();
    for (const auto& [key, value] : j.at("X").items())
        d.x_bags[std::stoi(key)] = value.get<std::vector<VertexId>>();
    for (const auto& [key, value] : j.at("child_order").items())
        d.child_order[std::stoi(key)] = value.get<std::vector<int>>();
    d.root_order = j.at("root_order").get<std::vector<int>>();
    return d;
}

} // namespace kelly
