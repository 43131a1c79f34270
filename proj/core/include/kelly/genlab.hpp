#ifndef KELLY_GENLAB_HPP
#define KELLY_GENLAB_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kelly/digraph.hpp"

namespace kelly {

/// Deterministic 64-bit generator (SplitMix64).  The algorithm is part of
/// the external contract: corpora regenerate bit-identically from the same
/// seed on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct GenSpec {
    std::string kind; // kdag | partial_kdag | random_digraph | out_degree_ge_2 | exhaustive
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    double edge_prob = 0.5;
};

/// Recursive growth from a complete digraph on k vertices: each new vertex
/// picks a uniformly sized (0..k), uniformly chosen out-set X, and receives
/// a back-edge from every existing u adjacent to all of X \ {u} (every u
/// when X is empty).  Vertex ids are 0..n-1 in insertion order.
Digraph generate_kdag(int n, int k, std::uint64_t seed);

/// Random subgraph of a k-DAG: each arc of generate_kdag(n, k, seed) is
/// kept or dropped with probability 1/2.  Kelly-width stays <= k+1.
Digraph generate_partial_kdag(int n, int k, std::uint64_t seed);

Digraph random_digraph(int n, double edge_prob, std::uint64_t seed);

/// Random digraph repaired to minimum out-degree >= 2 by adding arcs;
/// n >= 3.
Digraph random_min_out_degree_2(int n, std::uint64_t seed, double edge_prob = 0.5);

inline constexpr int kEnumerateDefaultMaxN = 4;

/// Every simple digraph on n vertices, one per isomorphism class, streamed
/// in increasing arc-bitmask order of the first-seen representative.  Stops
/// early when the callback returns false.
void for_each_digraph_class(int n, const std::function<bool(const Digraph&)>& fn,
                            int max_n = kEnumerateDefaultMaxN);

std::vector<Digraph> enumerate_all(int n, int max_n = kEnumerateDefaultMaxN);

/// Dispatch by GenSpec.kind ("exhaustive" is not dispatchable here; use
/// for_each_digraph_class).
Digraph generate(const GenSpec& spec);

/// Corpus file name: <kind>_n<n>[_k<k>]_s<seed>.dg
std::string corpus_filename(const GenSpec& spec);

} // namespace kelly

#endif
