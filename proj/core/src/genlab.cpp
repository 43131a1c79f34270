#include "kelly/genlab.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "kelly/canonical.hpp"

namespace kelly {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound == 0)
        throw DomainError("next_below: bound must be positive");
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t value;
    do {
        value = next();
    } while (value >= limit);
    return value % bound;
}

Digraph generate_kdag(int n, int k, std::uint64_t seed) {
    if (n < 0 || k < 0 || n < k)
        throw DomainError("generate_kdag: need n >= k >= 0");
    SplitMix64 rng(seed);
    std::vector<VertexId> vs;
    std::vector<Arc> arcs;
    for (int v = 0; v < k; ++v) {
        vs.push_back(v);
        for (int u = 0; u < v; ++u) {
            arcs.push_back({u, v});
            arcs.push_back({v, u});
        }
    }
    std::set<Arc> arc_set(arcs.begin(), arcs.end());
    for (int v = k; v < n; ++v) {
        // Out-set X: uniformly random size 0..k, then a uniformly random
        // subset of that size among the existing vertices.
        int size = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k) + 1));
        size = std::min(size, v);
        std::vector<int> pool(v);
        for (int i = 0; i < v; ++i)
            pool[i] = i;
        std::vector<int> x;
        for (int pick = 0; pick < size; ++pick) {
            std::uint64_t j = rng.next_below(pool.size());
            x.push_back(pool[j]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        }
        std::sort(x.begin(), x.end());
        for (int w : x)
            arc_set.insert({v, w});
        for (int u = 0; u < v; ++u) {
            bool dominates = true;
            for (int w : x)
                if (w != u && !arc_set.contains({u, w}))
                    dominates = false;
            if (dominates)
                arc_set.insert({u, v});
        }
        vs.push_back(v);
    }
    return Digraph(vs, std::vector<Arc>(arc_set.begin(), arc_set.end()));
}

Digraph generate_partial_kdag(int n, int k, std::uint64_t seed) {
    Digraph full = generate_kdag(n, k, seed);
    SplitMix64 rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    std::vector<Arc> kept;
    for (const Arc& arc : full.arcs())
        if (rng.next() & 1)
            kept.push_back(arc);
    return Digraph(full.vertices(), std::move(kept));
}

Digraph random_digraph(int n, double edge_prob, std::uint64_t seed) {
    if (n < 0)
        throw DomainError("random_digraph: n must be nonnegative");
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw DomainError("random_digraph: edge_prob must lie in [0, 1]");
    SplitMix64 rng(seed);
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i)
        vs[i] = i;
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.next_double() < edge_prob)
                arcs.push_back({u, v});
    return Digraph(std::move(vs), std::move(arcs));
}

Digraph random_min_out_degree_2(int n, std::uint64_t seed, double edge_prob) {
    if (n < 3)
        throw DomainError("random_min_out_degree_2: need n >= 3");
    Digraph g = random_digraph(n, edge_prob, seed);
    SplitMix64 rng(seed ^ 0x5ee5ee5ee5ee5ee5ULL);
    std::set<Arc> arc_set(g.arcs().begin(), g.arcs().end());
    for (int v = 0; v < n; ++v) {
        int degree = 0;
        for (int w = 0; w < n; ++w)
            if (arc_set.contains({v, w}))
                ++degree;
        while (degree < 2) {
            // Repair by adding random out-arcs to distinct targets.
            std::vector<int> candidates;
            for (int w = 0; w < n; ++w)
                if (w != v && !arc_set.contains({v, w}))
                    candidates.push_back(w);
            int w = candidates[rng.next_below(candidates.size())];
            arc_set.insert({v, w});
            ++degree;
        }
    }
    return Digraph(g.vertices(), std::vector<Arc>(arc_set.begin(), arc_set.end()));
}

void for_each_digraph_class(int n, const std::function<bool(const Digraph&)>& fn, int max_n) {
    if (n < 0 || n > max_n)
        throw CapacityError("for_each_digraph_class: n exceeds bound " + std::to_string(max_n));
    std::vector<Arc> slots;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v)
                slots.push_back({u, v});
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i)
        vs[i] = i;
    std::unordered_set<std::string> seen;
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1)
                arcs.push_back(slots[i]);
        Digraph g(vs, std::move(arcs));
        CanonicalForm form = canonical_form(g, std::max(n, 1));
        if (seen.insert(std::move(form.bytes)).second)
            if (!fn(g))
                return;
    }
}

std::vector<Digraph> enumerate_all(int n, int max_n) {
    std::vector<Digraph> classes;
    for_each_digraph_class(n, [&](const Digraph& g) {
        classes.push_back(g);
        return true;
    }, max_n);
    return classes;
}

Digraph generate(const GenSpec& spec) {
    if (spec.kind == "kdag")
        return generate_kdag(spec.n, spec.k, spec.seed);
    if (spec.kind == "partial_kdag")
        return generate_partial_kdag(spec.n, spec.k, spec.seed);
    if (spec.kind == "random_digraph")
        return random_digraph(spec.n, spec.edge_prob, spec.seed);
    if (spec.kind == "out_degree_ge_2")
        return random_min_out_degree_2(spec.n, spec.seed, spec.edge_prob);
    throw DomainError("generate: unknown kind '" + spec.kind + "'");
}

std::string corpus_filename(const GenSpec& spec) {
    std::string name = spec.kind + "_n" + std::to_string(spec.n);
    if (spec.kind == "kdag" || spec.kind == "partial_kdag")
        name += "_k" + std::to_string(spec.k);
    name += "_s" + std::to_string(spec.seed) + ".dg";
    return name;
}

} // namespace kelly
