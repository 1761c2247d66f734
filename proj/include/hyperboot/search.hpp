#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperboot/extension.hpp"
#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

/// Disjoint copies of the k-extension of K_{1,h} for h = 1..t-2, followed by
/// isolated vertices. Slow start for the k-extension of the star K_{1,t-1}.
struct StarConstruction {
    Hypergraph graph;
    std::vector<VertexId> hubs;              // hubs[h-1]: the degree-h vertex of component h
    std::vector<std::size_t> component_sizes;  // h + 1 + h(k-2)
    std::size_t isolated = 0;                // |W|, vertices at the end of the labeling
};

/// Vertices used by the components: sum over h of h + 1 + h(k-2).
std::size_t star_construction_size(std::size_t k, std::size_t t);

/// Requires k >= 3, t >= 3 and n >= star_construction_size(k, t) + k.
StarConstruction build_star_construction(std::size_t k, std::size_t t, std::size_t n);
Hypergraph star_construction(std::size_t k, std::size_t t, std::size_t n);

/// Includes each k-set, in lexicographic order, independently with the given
/// probability, drawing from Rng(seed).
Hypergraph random_hypergraph(std::size_t n, std::size_t k, double edge_probability, std::uint64_t seed);

enum class SearchMethod { Exhaustive, Local };
std::string to_string(SearchMethod m);

struct SearchResult {
    std::size_t best_tau = 0;
    Hypergraph witness;
    std::uint64_t explored = 0;
    SearchMethod method = SearchMethod::Exhaustive;
};

/// Deterministic preference among equal running times: fewer edges, then
/// lexicographically smaller edge list.
bool better_witness(const Hypergraph& a, const Hypergraph& b);

inline constexpr std::uint64_t kExhaustiveMaxKSets = 20;

/// Exact M_F(n): one process run per isomorphism class of k-graphs on n
/// vertices. Requires C(n,k) <= kExhaustiveMaxKSets (BudgetExceeded otherwise).
/// `explored` counts the classes.
SearchResult exhaustive_max(std::size_t k, std::size_t n, const ExtensionPattern& p, std::size_t workers = 1);

struct LocalSearchParams {
    std::size_t restarts = 20;
    std::size_t moves = 200;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
};

/// Hill climbing over single edge toggles with plateau moves and seeded
/// restarts. Restart 0 starts from the empty graph; when the pattern is a star
/// extension that fits, restart 1 starts from the slow star construction.
/// The result is replay-verified; `explored` counts process evaluations.
SearchResult local_search_max(std::size_t k, std::size_t n, const ExtensionPattern& p, LocalSearchParams params);

}  // namespace hyperboot
