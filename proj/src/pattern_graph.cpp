#include "hyperboot/pattern_graph.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

#include "hyperboot/errors.hpp"
#include "hyperboot/hg_io.hpp"

namespace hyperboot {

PatternGraph::PatternGraph(std::size_t t, std::vector<Pair> pairs) : t_(t) {
    if (t < 2) throw std::invalid_argument("pattern graph needs at least 2 vertices");
    for (auto& [u, v] : pairs) {
        if (u == v) throw std::invalid_argument("pattern graph has a loop");
        if (u >= t || v >= t) throw std::invalid_argument("pattern pair out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    pairs_ = std::move(pairs);
    adj_.assign(t, {});
    incident_.assign(t, {});
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto [u, v] = pairs_[i];
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        incident_[u].push_back(i);
        incident_[v].push_back(i);
    }
    for (std::size_t v = 0; v < t; ++v) {
        if (adj_[v].empty())
            throw std::invalid_argument("pattern graph has isolated vertex " + std::to_string(v));
        std::sort(adj_[v].begin(), adj_[v].end());
    }
}

bool PatternGraph::adjacent(std::size_t u, std::size_t v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

Hypergraph PatternGraph::as_hypergraph() const {
    std::vector<KSet> edges;
    for (const auto& [u, v] : pairs_)
        edges.push_back(KSet::pair(static_cast<VertexId>(u), static_cast<VertexId>(v)));
    return make_hypergraph(t_, 2, edges);
}

PatternGraph pattern_from_hypergraph(const Hypergraph& g) {
    if (g.k() != 2) throw std::invalid_argument("pattern graph file must be 2-uniform");
    std::vector<PatternGraph::Pair> pairs;
    for (const KSet& e : g.edges()) pairs.emplace_back(e[0], e[1]);
    return PatternGraph(g.n(), std::move(pairs));
}

namespace patterns {

PatternGraph edge() { return PatternGraph(2, {{0, 1}}); }

PatternGraph path(std::size_t edges) {
    if (edges < 1) throw std::invalid_argument("path needs at least one edge");
    std::vector<PatternGraph::Pair> pairs;
    for (std::size_t i = 0; i < edges; ++i) pairs.emplace_back(i, i + 1);
    return PatternGraph(edges + 1, std::move(pairs));
}

PatternGraph star(std::size_t leaves) {
    if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
    std::vector<PatternGraph::Pair> pairs;
    for (std::size_t i = 1; i <= leaves; ++i) pairs.emplace_back(0, i);
    return PatternGraph(leaves + 1, std::move(pairs));
}

PatternGraph cycle(std::size_t vertices) {
    if (vertices < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    std::vector<PatternGraph::Pair> pairs;
    for (std::size_t i = 0; i < vertices; ++i) pairs.emplace_back(i, (i + 1) % vertices);
    return PatternGraph(vertices, std::move(pairs));
}

PatternGraph clique(std::size_t vertices) {
    if (vertices < 2) throw std::invalid_argument("clique needs at least 2 vertices");
    std::vector<PatternGraph::Pair> pairs;
    for (std::size_t i = 0; i < vertices; ++i)
        for (std::size_t j = i + 1; j < vertices; ++j) pairs.emplace_back(i, j);
    return PatternGraph(vertices, std::move(pairs));
}

}  // namespace patterns

namespace {
const std::regex kNamed(R"(^(path|star|cycle|clique)([0-9]+)$)");
}

bool is_builtin_pattern_name(const std::string& spec) {
    return spec == "edge" || spec == "triangle" || std::regex_match(spec, kNamed);
}

PatternGraph resolve_pattern(const std::string& spec) {
    if (spec == "edge") return patterns::edge();
    if (spec == "triangle") return patterns::cycle(3);
    std::smatch m;
    if (std::regex_match(spec, m, kNamed)) {
        const std::size_t j = std::stoul(m[2].str());
        const std::string kind = m[1].str();
        if (kind == "path") return patterns::path(j);
        if (kind == "star") return patterns::star(j);
        if (kind == "cycle") return patterns::cycle(j);
        return patterns::clique(j);
    }
    return pattern_from_hypergraph(load_hg1(spec));
}

}  // namespace hyperboot
