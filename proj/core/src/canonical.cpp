#include "kelly/canonical.hpp"

#include <algorithm>
#include <cstdint>

namespace kelly {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Iterated degree refinement with hashed signatures.  The combine over
// neighbor colors is commutative, so the signatures are isomorphism
// invariants; colors are rank-normalized from the sorted hash values, so
// the class order is stable under relabeling.  A hash collision merely
// merges classes, which costs extra permutations below but never
// exactness.
std::vector<int> stable_colors(const DenseDigraph& d) {
    const int n = static_cast<int>(d.size());
    std::vector<std::uint64_t> sig(n, 0);
    std::vector<int> color(n, 0);
    for (int round = 0; round <= n; ++round) {
        for (int v = 0; v < n; ++v) {
            std::uint64_t out_h = 0, in_h = 0;
            for (int w = 0; w < n; ++w) {
                if (d.out_mask[v] >> w & 1)
                    out_h += mix64(static_cast<std::uint64_t>(color[w]) + 0x517cc1b727220a95ULL);
                if (d.in_mask[v] >> w & 1)
                    in_h += mix64(static_cast<std::uint64_t>(color[w]) + 0x6c62272e07bb0142ULL);
            }
            sig[v] = mix64(static_cast<std::uint64_t>(color[v]) ^ mix64(out_h * 3 + 1) ^
                           mix64(in_h * 5 + 2));
        }
        std::vector<std::uint64_t> sorted(sig);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> refined(n);
        for (int v = 0; v < n; ++v)
            refined[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) -
                                          sorted.begin());
        if (refined == color)
            break;
        color = std::move(refined);
    }
    return color;
}

std::vector<std::uint64_t> adjacency_bits(const DenseDigraph& d, const std::vector<int>& perm) {
    const int n = static_cast<int>(d.size());
    std::vector<std::uint64_t> bits((static_cast<std::size_t>(n) * n + 63) / 64, 0);
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++pos)
            if (d.out_mask[perm[i]] >> perm[j] & 1)
                bits[pos / 64] |= std::uint64_t{1} << (pos % 64);
    return bits;
}

} // namespace

CanonicalForm canonical_form(const Digraph& g, int max_n) {
    const int n = static_cast<int>(g.vertex_count());
    if (n > max_n || n > 64)
        throw CapacityError("canonical_form: " + std::to_string(n) + " vertices exceeds bound " +
                            std::to_string(std::min<int>(max_n, 64)));
    DenseDigraph d(g);
    std::vector<int> color = stable_colors(d);

    // Vertices grouped by color; candidate orderings list group 0 first,
    // then group 1, ..., each group internally in any order.  Minimizing the
    // adjacency bit string over this isomorphism-closed set of permutations
    // yields an exact canonical form.
    std::vector<std::vector<int>> groups;
    for (int c = 0;; ++c) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (color[v] == c)
                members.push_back(v);
        if (members.empty())
            break;
        groups.push_back(std::move(members));
    }

    std::vector<std::uint64_t> best;
    std::vector<int> best_perm;
    std::vector<int> perm;
    perm.reserve(n);

    auto evaluate = [&]() {
        auto bits = adjacency_bits(d, perm);
        if (best.empty() || bits < best) {
            best = std::move(bits);
            best_perm = perm;
        }
    };
    auto recurse = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            evaluate();
            return;
        }
        std::vector<int>& group = groups[gi];
        std::sort(group.begin(), group.end());
        do {
            perm.insert(perm.end(), group.begin(), group.end());
            self(self, gi + 1);
            perm.resize(perm.size() - group.size());
        } while (std::next_permutation(group.begin(), group.end()));
    };
    recurse(recurse, 0);

    CanonicalForm form;
    form.size_hint = {n, static_cast<int>(g.arc_count())};
    form.bytes.push_back(static_cast<char>(n));
    if (best.empty())
        best.assign((static_cast<std::size_t>(n) * n + 63) / 64, 0); // n == 0
    for (std::size_t byte = 0; byte < (static_cast<std::size_t>(n) * n + 7) / 8; ++byte)
        form.bytes.push_back(static_cast<char>(best[byte / 8] >> (byte % 8 * 8) & 0xff));
    form.labeling.reserve(n);
    for (int i = 0; i < n; ++i)
        form.labeling.push_back(d.ids[best_perm[i]]);
    return form;
}

bool isomorphic(const Digraph& a, const Digraph& b, int max_n) {
    if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count())
        return false;
    return canonical_form(a, max_n).bytes == canonical_form(b, max_n).bytes;
}

std::optional<std::unordered_map<VertexId, VertexId>>
find_isomorphism(const Digraph& a, const Digraph& b, int max_n) {
    if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count())
        return std::nullopt;
    CanonicalForm ca = canonical_form(a, max_n);
    CanonicalForm cb = canonical_form(b, max_n);
    if (ca.bytes != cb.bytes)
        return std::nullopt;
    std::unordered_map<VertexId, VertexId> map;
    for (std::size_t i = 0; i < ca.labeling.size(); ++i)
        map[ca.labeling[i]] = cb.labeling[i];
    return map;
}

} // namespace kelly
