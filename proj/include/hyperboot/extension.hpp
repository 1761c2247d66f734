#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperboot/hypergraph.hpp"
#include "hyperboot/pattern_graph.hpp"

namespace hyperboot {

/// Position of a vertex of the extension hypergraph.
struct Role {
    enum class Kind { Center, Sleeve };
    Kind kind = Kind::Center;
    std::size_t index = 0;  // G-vertex for centers, G-edge for sleeves
    std::size_t slot = 0;   // sleeve slot in [0, k-2); 0 for centers

    friend bool operator==(const Role&, const Role&) = default;
};

/// The k-extension of a pattern graph: each G-edge uv becomes the k-edge
/// {u, v} plus k-2 private sleeve vertices.
///
/// Numbering: G-vertices 0..t-1, then the sleeves of G-edge i at
/// t + i*(k-2) .. t + (i+1)*(k-2) - 1, with G-edges in lexicographic order.
class ExtensionPattern {
public:
    ExtensionPattern(PatternGraph g, std::size_t k, std::string name = {});

    const PatternGraph& graph() const { return g_; }
    std::size_t k() const { return k_; }
    const Hypergraph& hypergraph() const { return f_; }
    const std::vector<Role>& roles() const { return roles_; }
    const std::string& name() const { return name_; }

    std::size_t center_size() const { return g_.vertex_count(); }
    std::size_t edge_count() const { return g_.edge_count(); }
    std::size_t vertex_count() const { return roles_.size(); }
    std::size_t sleeve_size() const { return k_ - 2; }
    std::size_t sleeve_vertex(std::size_t edge, std::size_t slot) const {
        return g_.vertex_count() + edge * (k_ - 2) + slot;
    }
    /// Extension hyperedge of G-edge i.
    KSet edge(std::size_t i) const;

private:
    PatternGraph g_;
    std::size_t k_;
    std::string name_;
    Hypergraph f_;
    std::vector<Role> roles_;
};

struct PatternStats {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t center_size = 0;

    friend bool operator==(const PatternStats&, const PatternStats&) = default;
};

/// Throws std::invalid_argument for k < 2 or k above kMaxUniformity.
ExtensionPattern extend(const PatternGraph& g, std::size_t k, std::string name = {});

PatternStats pattern_stats(const ExtensionPattern& p);

/// Resolves a pattern spec (see resolve_pattern) and extends it to uniformity k.
ExtensionPattern make_pattern(const std::string& spec, std::size_t k);

}  // namespace hyperboot
