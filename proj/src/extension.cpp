#include "hyperboot/extension.hpp"

#include <stdexcept>

namespace hyperboot {

namespace {

Hypergraph build_extension(const PatternGraph& g, std::size_t k) {
    if (k < 2) throw std::invalid_argument("extension uniformity must be at least 2");
    if (k > kMaxUniformity) throw std::invalid_argument("extension uniformity exceeds supported maximum");
    const std::size_t t = g.vertex_count();
    const std::size_t vertices = t + (k - 2) * g.edge_count();
    std::vector<KSet> edges;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        std::vector<VertexId> vs{static_cast<VertexId>(g.pair(i).first),
                                 static_cast<VertexId>(g.pair(i).second)};
        for (std::size_t s = 0; s < k - 2; ++s) vs.push_back(static_cast<VertexId>(t + i * (k - 2) + s));
        edges.push_back(KSet::from_unsorted(vs));
    }
    return make_hypergraph(vertices, k, edges);
}

}  // namespace

ExtensionPattern::ExtensionPattern(PatternGraph g, std::size_t k, std::string name)
    : g_(std::move(g)), k_(k), name_(std::move(name)), f_(build_extension(g_, k)) {
    for (std::size_t v = 0; v < g_.vertex_count(); ++v) roles_.push_back({Role::Kind::Center, v, 0});
    for (std::size_t i = 0; i < g_.edge_count(); ++i)
        for (std::size_t s = 0; s < k_ - 2; ++s) roles_.push_back({Role::Kind::Sleeve, i, s});
}

KSet ExtensionPattern::edge(std::size_t i) const {
    KSet e = KSet::pair(static_cast<VertexId>(g_.pair(i).first), static_cast<VertexId>(g_.pair(i).second));
    for (std::size_t s = 0; s < k_ - 2; ++s) e = e.with(static_cast<VertexId>(sleeve_vertex(i, s)));
    return e;
}

ExtensionPattern extend(const PatternGraph& g, std::size_t k, std::string name) {
    return ExtensionPattern(g, k, std::move(name));
}

PatternStats pattern_stats(const ExtensionPattern& p) {
    return {p.vertex_count(), p.edge_count(), p.center_size()};
}

ExtensionPattern make_pattern(const std::string& spec, std::size_t k) {
    return extend(resolve_pattern(spec), k, spec);
}

}  // namespace hyperboot
