#pragma once

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "hyperboot/kset.hpp"

namespace hyperboot {

/// k-uniform hypergraph on the vertex set {0..n-1}.
///
/// Edges are kept as a sorted list, a hash set for membership, and a pair
/// index mapping every vertex pair {x,y} to the sorted (k-2)-sets completing
/// it to an edge (its link). The pair index answers "which edges contain this
/// pair" without scanning, which is what the copy search needs.
///
/// Values are immutable apart from construction; use with_edges() to extend.
class Hypergraph {
public:
    Hypergraph() = default;
    /// Empty hypergraph. Requires n >= k >= 2.
    Hypergraph(std::size_t n, std::size_t k);

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<KSet>& edges() const { return edges_; }

    bool contains(const KSet& e) const { return index_.count(e) != 0; }

    /// (k-2)-sets u with pair ∪ u an edge, ascending. Requires x != y.
    std::span<const KSet> link(VertexId x, VertexId y) const;
    bool adjacent(VertexId x, VertexId y) const { return !link(x, y).empty(); }
    /// Vertices sharing at least one edge with v, ascending.
    std::span<const VertexId> neighbours(VertexId v) const { return shadow_[v]; }
    std::size_t degree(VertexId v) const { return degree_[v]; }

    /// Copy with additional edges; edges already present are ignored.
    Hypergraph with_edges(std::span<const KSet> added) const;

    bool is_complete() const { return edges_.size() == binomial(n_, k_); }

    /// Throws std::invalid_argument unless e is a valid k-set over this vertex set.
    void validate_edge(const KSet& e) const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
    }

private:
    void insert_unchecked(const KSet& e);
    void rebuild_sorted();

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<KSet> edges_;
    std::unordered_set<KSet, KSetHash> index_;
    std::vector<std::vector<KSet>> links_;       // indexed by x * n + y, x < y
    std::vector<std::vector<VertexId>> shadow_;  // sorted neighbour lists
    std::vector<std::size_t> degree_;
};

/// Validated construction; duplicate edges collapse. Throws std::invalid_argument
/// on a uniformity violation or an out-of-range vertex.
Hypergraph make_hypergraph(std::size_t n, std::size_t k, std::span<const KSet> edges);

/// All C(n,k) k-subsets of {0..n-1}.
Hypergraph complete_hypergraph(std::size_t n, std::size_t k);

/// All k-sets of {0..n-1} absent from h, ascending.
std::vector<KSet> absent_ksets(const Hypergraph& h);

}  // namespace hyperboot
