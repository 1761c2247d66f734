#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hyperboot/extension.hpp"
#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

/// A copy of an extension pattern in a host, with its fixed isomorphism.
///
/// vertex_map[x] is the host image of pattern vertex x (extension numbering),
/// so the first t entries are the center map and the rest list each G-edge's
/// sleeve in order. Witnesses compare lexicographically on vertex_map, which
/// orders by center map first and sleeve assignment second.
struct CopyWitness {
    std::vector<VertexId> vertex_map;
    /// Host edge realizing each G-edge, in G-edge order.
    std::vector<KSet> edges;

    std::span<const VertexId> center_map(std::size_t t) const { return {vertex_map.data(), t}; }
    /// Center vertex set.
    KSet center_vertices(std::size_t t) const;
    /// Center pairs (images of the G-edges), ascending.
    std::vector<KSet> center_pairs(const ExtensionPattern& p) const;
    bool uses(const KSet& e) const;

    friend bool operator==(const CopyWitness& a, const CopyWitness& b) { return a.vertex_map == b.vertex_map; }
    friend std::strong_ordering operator<=>(const CopyWitness& a, const CopyWitness& b) {
        return a.vertex_map <=> b.vertex_map;
    }
};

/// Absent k-sets whose addition creates a new copy, each with its
/// lexicographically least witness. new_edges is ascending; witnesses[i]
/// belongs to new_edges[i].
struct Frontier {
    std::vector<KSet> new_edges;
    std::vector<CopyWitness> witnesses;

    bool empty() const { return new_edges.empty(); }
    std::size_t size() const { return new_edges.size(); }
    const CopyWitness* witness_for(const KSet& e) const;
};

/// Limits for searches whose cost can blow up (diagnostics). Zero = unlimited.
struct SearchBudget {
    std::uint64_t max_nodes = 0;
};

/// Checks that w is a copy of p inside host ∪ {extra}: injective map, every
/// pattern edge mapped onto a listed host edge, sleeves disjoint.
bool validate_witness(const ExtensionPattern& p, const Hypergraph& host, const CopyWitness& w,
                      const std::optional<KSet>& extra = std::nullopt);

/// Copy search for one pattern in one host, with per-host pruning data
/// computed once. Holds references; both must outlive the finder. Const
/// methods are safe to call from several threads.
///
/// Searches assign center vertices in G-vertex order over ascending host
/// candidates, so results come out in lexicographic center-map order; sleeves
/// are then assigned in G-edge order, ascending, exactly (full backtracking).
class CopyFinder {
public:
    CopyFinder(const ExtensionPattern& p, const Hypergraph& host);

    const ExtensionPattern& pattern() const { return p_; }
    const Hypergraph& host() const { return h_; }

    /// Least copy in host ∪ {e} using e. e must be absent from host.
    std::optional<CopyWitness> least_using(const KSet& e, SearchBudget budget = {}) const;
    /// Least copy having `pair` as the image of some G-edge.
    std::optional<CopyWitness> least_through_pair(const KSet& pair, SearchBudget budget = {}) const;
    /// Least copy whose center map is exactly `center`.
    std::optional<CopyWitness> with_center_map(std::span<const VertexId> center, SearchBudget budget = {}) const;

    /// Visits one witness per feasible center map in lexicographic order. With
    /// one_per_center, center maps differing only by swapping interchangeable
    /// G-vertices (same neighbourhood) are visited once, by their least member.
    void for_each(const std::optional<KSet>& must_use, const std::function<bool(const CopyWitness&)>& visit,
                  SearchBudget budget = {}, bool one_per_center = false) const;

    /// How many G-edges at one center vertex the host vertex v can carry: the
    /// number of disjoint sets in v's link, capped at the largest G-degree.
    std::size_t capacity(VertexId v) const { return capacity_[v]; }
    /// Size of a greedy packing of v's link; a lower bound on its packing number.
    std::size_t greedy_capacity(VertexId v) const { return greedy_[v]; }
    /// Earlier G-vertices interchangeable with G-vertex j.
    const std::vector<std::size_t>& earlier_twins(std::size_t j) const { return twins_[j]; }

private:
    const ExtensionPattern& p_;
    const Hypergraph& h_;
    std::vector<std::size_t> capacity_;
    std::vector<std::size_t> greedy_;
    std::vector<std::vector<std::size_t>> twins_;
};

/// Lexicographically least copy in host ∪ {e} that uses e, if any.
/// Throws std::invalid_argument if e is already an edge of host.
std::optional<CopyWitness> creates_new_copy(const ExtensionPattern& p, const Hypergraph& host, const KSet& e);

/// Exactly the absent k-sets whose addition creates a new copy. Candidates
/// are split across `workers` threads; the result does not depend on it.
Frontier frontier(const ExtensionPattern& p, const Hypergraph& host, std::size_t workers = 1);

/// Visits copies in lexicographic order of the center map, one witness per
/// feasible center map (its least sleeve assignment). With must_use, only
/// copies in host ∪ {must_use} that use it are visited. The visitor returns
/// false to stop. Throws std::invalid_argument if must_use is already in host.
void enumerate_extension_embeddings(const ExtensionPattern& p, const Hypergraph& host,
                                    const std::optional<KSet>& must_use,
                                    const std::function<bool(const CopyWitness&)>& visit,
                                    SearchBudget budget = {});

/// Lexicographically least copy whose center contains `pair` as the image of
/// some G-edge. Null if none exists.
std::optional<CopyWitness> least_copy_through_pair(const ExtensionPattern& p, const Hypergraph& host,
                                                   const KSet& pair, SearchBudget budget = {});

/// Least copy whose center map sends G-vertex i to center[i] for every i.
std::optional<CopyWitness> copy_with_center_map(const ExtensionPattern& p, const Hypergraph& host,
                                                std::span<const VertexId> center, SearchBudget budget = {});

}  // namespace hyperboot
