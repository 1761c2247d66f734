#include "hyperboot/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hyperboot/errors.hpp"

namespace hyperboot {

namespace {

std::vector<std::size_t> rank_signatures(const std::vector<std::vector<std::size_t>>& sigs) {
    std::vector<std::vector<std::size_t>> distinct = sigs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> out(sigs.size());
    for (std::size_t v = 0; v < sigs.size(); ++v)
        out[v] = static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), sigs[v]) - distinct.begin());
    return out;
}

std::size_t count_distinct(std::vector<std::size_t> xs) {
    std::sort(xs.begin(), xs.end());
    return static_cast<std::size_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
}

}  // namespace

std::vector<std::size_t> refined_colours(const Hypergraph& h) {
    const std::size_t n = h.n();
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t i = 0; i < h.edges().size(); ++i)
        for (VertexId v : h.edges()[i]) incident[v].push_back(i);

    std::vector<std::vector<std::size_t>> sigs(n);
    for (std::size_t v = 0; v < n; ++v) sigs[v] = {h.degree(static_cast<VertexId>(v))};
    std::vector<std::size_t> colour = rank_signatures(sigs);
    std::size_t classes = count_distinct(colour);

    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::vector<std::size_t>> seen;
            for (std::size_t ei : incident[v]) {
                std::vector<std::size_t> others;
                for (VertexId w : h.edges()[ei])
                    if (w != v) others.push_back(colour[w]);
                std::sort(others.begin(), others.end());
                seen.push_back(std::move(others));
            }
            std::sort(seen.begin(), seen.end());
            auto& sig = sigs[v];
            sig.assign(1, colour[v]);
            for (const auto& s : seen) {
                sig.push_back(s.size());
                sig.insert(sig.end(), s.begin(), s.end());
            }
        }
        auto next = rank_signatures(sigs);
        const std::size_t next_classes = count_distinct(next);
        colour = std::move(next);
        if (next_classes == classes) break;
        classes = next_classes;
    }
    return colour;
}

std::string canonical_code(const Hypergraph& h) {
    const std::size_t n = h.n();
    if (n > kCanonicalMaxVertices)
        throw BudgetExceeded("canonical_code supports at most " +
                             std::to_string(kCanonicalMaxVertices) + " vertices");

    const auto colour = refined_colours(h);
    const std::size_t classes = count_distinct(colour);
    std::vector<std::vector<VertexId>> cells(classes);
    for (std::size_t v = 0; v < n; ++v) cells[colour[v]].push_back(static_cast<VertexId>(v));

    std::vector<VertexId> label(n);
    std::vector<std::uint16_t> best;
    std::vector<std::uint16_t> current(h.edge_count());

    while (true) {
        std::size_t next_label = 0;
        for (const auto& cell : cells)
            for (VertexId v : cell) label[v] = static_cast<VertexId>(next_label++);
        for (std::size_t i = 0; i < h.edge_count(); ++i) {
            std::uint16_t mask = 0;
            for (VertexId v : h.edges()[i]) mask |= static_cast<std::uint16_t>(1u << label[v]);
            current[i] = mask;
        }
        std::sort(current.begin(), current.end());
        if (best.empty() || current < best) best = current;

        std::size_t c = classes;
        while (c > 0 && !std::next_permutation(cells[c - 1].begin(), cells[c - 1].end())) --c;
        if (c == 0) break;
    }

    std::string code;
    code.push_back(static_cast<char>(n));
    code.push_back(static_cast<char>(h.k()));
    for (const auto& cell : cells) code.push_back(static_cast<char>(cell.size()));
    code.push_back('|');
    for (std::uint16_t m : best) {
        code.push_back(static_cast<char>(m & 0xFF));
        code.push_back(static_cast<char>(m >> 8));
    }
    return code;
}

bool isomorphic_by_permutation(const Hypergraph& a, const Hypergraph& b) {
    if (a.n() != b.n() || a.k() != b.k() || a.edge_count() != b.edge_count()) return false;
    std::vector<VertexId> perm(a.n());
    std::iota(perm.begin(), perm.end(), VertexId{0});
    do {
        bool ok = true;
        for (const KSet& e : a.edges()) {
            std::vector<VertexId> img;
            for (VertexId v : e) img.push_back(perm[v]);
            if (!b.contains(KSet::from_unsorted(img))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace hyperboot
