#include "hyperboot/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hyperboot {

Hypergraph::Hypergraph(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k < 2) throw std::invalid_argument("uniformity must be at least 2");
    if (k > kMaxUniformity) throw std::invalid_argument("uniformity exceeds supported maximum");
    if (n < k) throw std::invalid_argument("vertex count must be at least the uniformity");
    if (n > 0xFFFF) throw std::invalid_argument("vertex count too large");
    links_.assign(n * n, {});
    shadow_.assign(n, {});
    degree_.assign(n, 0);
}

void Hypergraph::validate_edge(const KSet& e) const {
    if (e.size() != k_)
        throw std::invalid_argument("uniformity violation: edge " + e.to_string() + " has " +
                                    std::to_string(e.size()) + " vertices, expected " +
                                    std::to_string(k_));
    if (!e.empty() && e.back() >= n_)
        throw std::invalid_argument("vertex index out of range in edge " + e.to_string());
}

std::span<const KSet> Hypergraph::link(VertexId x, VertexId y) const {
    if (x > y) std::swap(x, y);
    return links_[static_cast<std::size_t>(x) * n_ + y];
}

void Hypergraph::insert_unchecked(const KSet& e) {
    if (!index_.insert(e).second) return;
    edges_.push_back(e);
    for (std::size_t i = 0; i < e.size(); ++i) {
        ++degree_[e[i]];
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const VertexId x = e[i];
            const VertexId y = e[j];
            auto& lk = links_[static_cast<std::size_t>(x) * n_ + y];
            if (lk.empty()) {
                auto& sx = shadow_[x];
                sx.insert(std::lower_bound(sx.begin(), sx.end(), y), y);
                auto& sy = shadow_[y];
                sy.insert(std::lower_bound(sy.begin(), sy.end(), x), x);
            }
            lk.push_back(e.without(x).without(y));
        }
    }
}

void Hypergraph::rebuild_sorted() {
    std::sort(edges_.begin(), edges_.end());
    for (auto& lk : links_)
        if (lk.size() > 1 && !std::is_sorted(lk.begin(), lk.end())) std::sort(lk.begin(), lk.end());
}

Hypergraph Hypergraph::with_edges(std::span<const KSet> added) const {
    Hypergraph out = *this;
    for (const KSet& e : added) {
        validate_edge(e);
        out.insert_unchecked(e);
    }
    out.rebuild_sorted();
    return out;
}

Hypergraph make_hypergraph(std::size_t n, std::size_t k, std::span<const KSet> edges) {
    Hypergraph h(n, k);
    return h.with_edges(edges);
}

Hypergraph complete_hypergraph(std::size_t n, std::size_t k) {
    std::vector<KSet> all;
    for_each_subset(n, k, [&](const KSet& s) {
        all.push_back(s);
        return true;
    });
    return make_hypergraph(n, k, all);
}

std::vector<KSet> absent_ksets(const Hypergraph& h) {
    std::vector<KSet> out;
    for_each_subset(h.n(), h.k(), [&](const KSet& s) {
        if (!h.contains(s)) out.push_back(s);
        return true;
    });
    return out;
}

}  // namespace hyperboot
