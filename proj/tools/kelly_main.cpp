// kelly: exact Kelly-width, directed-minor containment, obstruction
// extraction and the related games, on small digraphs.
//
// Exit codes: 0 success / yes-verdict, 1 no-verdict, 2 usage or input
// error, 3 capacity exceeded, 4 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kelly/canonical.hpp"
#include "kelly/elimination.hpp"
#include "kelly/extractor.hpp"
#include "kelly/game.hpp"
#include "kelly/genlab.hpp"
#include "kelly/io.hpp"
#include "kelly/kelly_decomposition.hpp"
#include "kelly/minor_oracle.hpp"

using nlohmann::json;
using namespace kelly;

namespace {

struct Bounds {
    int canonical = kCanonicalDefaultMaxN;
    int minor = kMinorDefaultMaxN;
    int game = kGameDefaultMaxN;
    int dp = kKellyWidthDefaultMaxN;
    int enumerate = kEnumerateDefaultMaxN;
};

Bounds bounds_from_env() {
    Bounds b;
    if (const char* env = std::getenv("KELLY_MAX_N")) {
        int v = std::atoi(env);
        if (v > 0)
            b = Bounds{v, v, v, v, v};
    }
    return b;
}

void emit(const json& j, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << j.dump() << "\n";
    else
        std::cout << human;
}

std::string join_ids(const std::vector<VertexId>& vs) {
    std::string s;
    for (VertexId v : vs) {
        if (!s.empty())
            s += ' ';
        s += std::to_string(v);
    }
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << content;
}

int cmd_width(const std::string& file, bool as_json, const std::string& dot_out, const Bounds& b) {
    Digraph g = read_edge_list_file(file);
    if (!dot_out.empty())
        write_file(dot_out, to_dot(g));
    KellyWidthResult r = exact_kelly_width(g, b.dp);
    json j{{"kelly_width", r.width},
           {"ordering", r.ordering.order},
           {"ordering_width", r.ordering.width}};
    emit(j, as_json,
         "kelly-width: " + std::to_string(r.width) + "\n" +
             "ordering: " + join_ids(r.ordering.order) + "\n");
    return 0;
}

int cmd_recognize(const std::string& file, int k, bool as_json) {
    Digraph g = read_edge_list_file(file);
    RecognitionResult r = recognize_partial_k(g, k);
    std::string label = "partial " + std::to_string(k) + "-DAG";
    if (r.recognized) {
        json j{{"recognized", true}, {"order", r.ordering.order}, {"width", r.ordering.width}};
        emit(j, as_json, label + ": yes\norder: " + join_ids(r.ordering.order) + "\n");
        return 0;
    }
    json j{{"recognized", false}, {"core", digraph_to_json(r.residual.core)}};
    std::string human = label + ": no\ncore vertices: " + join_ids(r.residual.core.vertices()) + "\n";
    for (const auto& [u, v] : r.residual.core.arcs())
        human += "core arc: " + std::to_string(u) + " " + std::to_string(v) + "\n";
    emit(j, as_json, human);
    return 1;
}

int cmd_minor(const std::string& file, const std::string& target_name,
              const std::string& pattern_file, bool as_json, const Bounds& b) {
    Digraph g = read_edge_list_file(file);
    Digraph target;
    std::string name;
    if (!pattern_file.empty()) {
        target = read_edge_list_file(pattern_file);
        name = "pattern";
    } else {
        target = obstruction_by_name(target_name);
        name = target_name;
    }
    MinorVerdict verdict = contains_minor(g, target, b.minor);
    if (!verdict.contains) {
        emit(json{{"contains", false}, {"target", name}}, as_json, "no\n");
        return 1;
    }
    json w = witness_to_json(*verdict.witness, name);
    emit(json{{"contains", true}, {"target", name}, {"witness", w}}, as_json,
         "yes\nwitness: " + w.dump() + "\n");
    return 0;
}

int cmd_obstruct(const std::string& file, bool as_json, const Bounds& b) {
    Digraph g = read_edge_list_file(file);
    RecognitionResult r = recognize_partial_k(g, 1);
    if (r.recognized) {
        emit(json{{"partial_1_dag", true}}, as_json, "partial 1-DAG: yes; no obstruction\n");
        return 0;
    }
    WitnessScript script = extract(r.residual.core);
    script.steps.insert(script.steps.begin(), r.residual.peeled.begin(),
                        r.residual.peeled.end());
    if (!replay(g, script).isomorphic)
        throw InternalError("obstruct: composed witness failed replay");
    std::string name;
    for (const char* candidate : {"k3", "n4", "m5"})
        if (isomorphic(script.claimed_result, obstruction_by_name(candidate), b.canonical))
            name = candidate;
    json w = witness_to_json(script, name);
    emit(json{{"partial_1_dag", false}, {"obstruction", name}, {"witness", w}}, as_json,
         "partial 1-DAG: no; obstruction: " + name + "\nwitness: " + w.dump() + "\n");
    return 1;
}

int cmd_extract(const std::string& file, bool as_json, const Bounds& b) {
    Digraph g = read_edge_list_file(file);
    WitnessScript script = extract(g);
    std::string name;
    for (const char* candidate : {"k3", "n4", "m5"})
        if (isomorphic(script.claimed_result, obstruction_by_name(candidate), b.canonical))
            name = candidate;
    json w = witness_to_json(script, name);
    emit(json{{"target", name}, {"witness", w}}, as_json,
         "target: " + name + "\nwitness: " + w.dump() + "\n");
    return 0;
}

int cmd_game(const std::string& file, bool as_json, const Bounds& b) {
    Digraph g = read_edge_list_file(file);
    int k = min_cops(g, b.game);
    emit(json{{"min_cops", k}}, as_json, "min-cops: " + std::to_string(k) + "\n");
    return 0;
}

int cmd_decomp(const std::string& file, bool as_json, const Bounds& b) {
    Digraph g = read_edge_list_file(file);
    KellyWidthResult kw = exact_kelly_width(g, b.dp);
    KellyDecomposition d = build_decomposition(g, kw.ordering);
    DecompositionVerdict verdict = validate_decomposition(g, d);
    if (!verdict.valid)
        throw InternalError("decomp: builder produced an invalid decomposition");
    json j{{"width", verdict.width}, {"decomposition", decomposition_to_json(d)}};
    emit(j, as_json,
         "kelly-decomposition: valid\nwidth: " + std::to_string(verdict.width) + "\n" +
             decomposition_to_json(d).dump() + "\n");
    return 0;
}

int cmd_gen(const GenSpec& base, int count, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    json manifest = json::array();
    for (int i = 0; i < count; ++i) {
        GenSpec spec = base;
        spec.seed = base.seed + static_cast<std::uint64_t>(i);
        Digraph g = generate(spec);
        std::string name = corpus_filename(spec);
        write_file(out_dir + "/" + name, write_edge_list(g));
        manifest.push_back(json{{"kind", spec.kind},
                                {"n", spec.n},
                                {"k", spec.k},
                                {"seed", spec.seed},
                                {"edge_prob", spec.edge_prob},
                                {"file", name}});
        std::cout << name << "\n";
    }
    write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return 0;
}

int cmd_enumerate(int n, bool as_json, const Bounds& b) {
    if (as_json) {
        json all = json::array();
        for_each_digraph_class(n, [&](const Digraph& g) {
            all.push_back(digraph_to_json(g));
            return true;
        }, b.enumerate);
        std::cout << all.dump() << "\n";
    } else {
        bool first = true;
        for_each_digraph_class(n, [&](const Digraph& g) {
            if (!first)
                std::cout << "\n";
            first = false;
            std::cout << write_edge_list(g);
            return true;
        }, b.enumerate);
    }
    return 0;
}

int cmd_verify(const std::string& file, const std::string& script_file, bool as_json) {
    Digraph g = read_edge_list_file(file);
    std::ifstream in(script_file);
    if (!in)
        throw ParseError("cannot open '" + script_file + "'");
    json j = json::parse(in, nullptr, true);
    WitnessScript script = witness_from_json(j);
    bool ok;
    std::string detail;
    try {
        ok = replay(g, script).isomorphic;
    } catch (const ReplayError& e) {
        ok = false;
        detail = e.what();
    }
    std::string target = j.value("target", "");
    if (ok) {
        emit(json{{"valid", true}, {"target", target}}, as_json,
             "valid witness: target " + target + "\n");
        return 0;
    }
    emit(json{{"valid", false}, {"target", target}, {"detail", detail}}, as_json,
         detail.empty() ? "invalid witness\n" : "invalid witness: " + detail + "\n");
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kelly-width, directed minors and obstruction extraction on small digraphs"};
    app.require_subcommand(1);
    Bounds bounds = bounds_from_env();

    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string file, pattern_file, target_name, dot_out, script_file, out_dir = ".";
    int k = 1, n = 0, count = 1;
    GenSpec spec;

    CLI::App* width = app.add_subcommand("width", "exact Kelly-width and an optimal ordering");
    width->add_option("file", file)->required();
    width->add_option("--dot", dot_out, "also write a DOT rendering");

    CLI::App* recognize = app.add_subcommand("recognize", "greedy partial k-DAG recognition");
    recognize->add_option("--k", k, "0 or 1")->required();
    recognize->add_option("file", file)->required();

    CLI::App* minor = app.add_subcommand("minor", "directed-minor containment with witness");
    CLI::Option* opt_target = minor->add_option("--target", target_name, "k2, k3, n4 or m5");
    CLI::Option* opt_pattern = minor->add_option("--pattern", pattern_file, "edge-list pattern");
    opt_target->excludes(opt_pattern);
    minor->add_option("file", file)->required();

    CLI::App* obstruct = app.add_subcommand("obstruct", "peel and extract a forbidden minor");
    obstruct->add_option("file", file)->required();

    CLI::App* extract_cmd = app.add_subcommand("extract", "obstruction from an out-degree-2 graph");
    extract_cmd->add_option("file", file)->required();

    CLI::App* game = app.add_subcommand("game", "minimum cops for the inert-robber game");
    game->add_option("file", file)->required();

    CLI::App* decomp = app.add_subcommand("decomp", "build and validate a Kelly-decomposition");
    decomp->add_option("file", file)->required();

    CLI::App* gen = app.add_subcommand("gen", "write corpus instances and a manifest");
    gen->add_option("--kind", spec.kind, "kdag | partial_kdag | random_digraph | out_degree_ge_2")
        ->required();
    gen->add_option("--n", spec.n)->required();
    gen->add_option("--k", spec.k);
    gen->add_option("--seed", spec.seed);
    gen->add_option("--edge-prob", spec.edge_prob);
    gen->add_option("--count", count, "instances with consecutive seeds");
    gen->add_option("--out", out_dir, "output directory");

    CLI::App* enumerate = app.add_subcommand("enumerate", "all digraph classes on n vertices");
    enumerate->add_option("n", n)->required();

    CLI::App* verify = app.add_subcommand("verify", "replay a witness script against a graph");
    verify->add_option("file", file)->required();
    verify->add_option("script", script_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (width->parsed())
            return cmd_width(file, as_json, dot_out, bounds);
        if (recognize->parsed())
            return cmd_recognize(file, k, as_json);
        if (minor->parsed()) {
            if (target_name.empty() && pattern_file.empty())
                throw DomainError("minor: need --target or --pattern");
            return cmd_minor(file, target_name, pattern_file, as_json, bounds);
        }
        if (obstruct->parsed())
            return cmd_obstruct(file, as_json, bounds);
        if (extract_cmd->parsed())
            return cmd_extract(file, as_json, bounds);
        if (game->parsed())
            return cmd_game(file, as_json, bounds);
        if (decomp->parsed())
            return cmd_decomp(file, as_json, bounds);
        if (gen->parsed())
            return cmd_gen(spec, count, out_dir);
        if (enumerate->parsed())
            return cmd_enumerate(n, as_json, bounds);
        if (verify->parsed())
            return cmd_verify(file, script_file, as_json);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
