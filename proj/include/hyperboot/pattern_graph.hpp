#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

/// Simple graph on {0..t-1} with no isolated vertices. Pairs are stored in
/// lexicographic order; a pair's position is its edge index everywhere else.
class PatternGraph {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    PatternGraph() = default;
    /// Throws std::invalid_argument on loops, out-of-range endpoints or isolated vertices.
    PatternGraph(std::size_t t, std::vector<Pair> pairs);

    std::size_t vertex_count() const { return t_; }
    std::size_t edge_count() const { return pairs_.size(); }
    const std::vector<Pair>& pairs() const { return pairs_; }
    const Pair& pair(std::size_t i) const { return pairs_[i]; }
    std::size_t degree(std::size_t v) const { return adj_[v].size(); }
    /// Edge indices incident to v.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
    bool adjacent(std::size_t u, std::size_t v) const;

    /// The pattern as a 2-uniform hypergraph.
    Hypergraph as_hypergraph() const;

    friend bool operator==(const PatternGraph& a, const PatternGraph& b) {
        return a.t_ == b.t_ && a.pairs_ == b.pairs_;
    }

private:
    std::size_t t_ = 0;
    std::vector<Pair> pairs_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<std::size_t>> incident_;
};

PatternGraph pattern_from_hypergraph(const Hypergraph& g);

namespace patterns {
PatternGraph edge();
PatternGraph path(std::size_t edges);
PatternGraph star(std::size_t leaves);
PatternGraph cycle(std::size_t vertices);
PatternGraph clique(std::size_t vertices);
}  // namespace patterns

/// Resolves `edge`, `path<j>`, `star<j>`, `cycle<j>`, `clique<j>`, or else
/// treats the spec as a path to a 2-uniform HG1 file.
PatternGraph resolve_pattern(const std::string& spec);

/// True iff `spec` names a built-in pattern rather than a file.
bool is_builtin_pattern_name(const std::string& spec);

}  // namespace hyperboot
