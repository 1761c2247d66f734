#include "hyperboot/matching.hpp"

#include <algorithm>
#include <cstdint>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "hyperboot/errors.hpp"

namespace hyperboot {

std::size_t graph_matching_number(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (edges.empty()) return 0;
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    Graph g(n);
    for (auto [a, b] : edges) boost::add_edge(a, b, g);
    std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(n);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    return boost::matching_size(g, &mate[0]);
}

namespace {

bool packs_masks(const std::vector<std::uint64_t>& sets, std::size_t r) {
    if (r == 0) return true;
    std::uint64_t cover = 0;
    std::size_t greedy = 0;
    for (std::uint64_t s : sets)
        if ((s & cover) == 0) {
            cover |= s;
            if (++greedy >= r) return true;
        }
    if (r == 2) {
        for (std::size_t a = 0; a < sets.size(); ++a)
            for (std::size_t b = a + 1; b < sets.size(); ++b)
                if ((sets[a] & sets[b]) == 0) return true;
        return false;
    }
    // Every set meets the greedy cover, so each set of an r-packing does too;
    // try every set as the first one.
    std::vector<std::uint64_t> rest;
    for (std::uint64_t f : sets) {
        rest.clear();
        for (std::uint64_t s : sets)
            if ((s & f) == 0) rest.push_back(s);
        if (rest.size() + 1 >= r && packs_masks(rest, r - 1)) return true;
    }
    return false;
}

bool disjoint_from(const KSet& s, const std::vector<VertexId>& taken) {
    for (VertexId v : s)
        if (std::find(taken.begin(), taken.end(), v) != taken.end()) return false;
    return true;
}

bool packs(const std::vector<const KSet*>& sets, std::size_t r) {
    if (r == 0) return true;
    std::vector<VertexId> cover;
    std::size_t greedy = 0;
    for (const KSet* s : sets)
        if (disjoint_from(*s, cover)) {
            cover.insert(cover.end(), s->begin(), s->end());
            if (++greedy >= r) return true;
        }
    std::vector<const KSet*> rest;
    for (const KSet* f : sets) {
        rest.clear();
        for (const KSet* s : sets)
            if (s->disjoint(*f)) rest.push_back(s);
        if (rest.size() + 1 >= r && packs(rest, r - 1)) return true;
    }
    return false;
}

}  // namespace

bool has_disjoint_sets(const std::vector<KSet>& sets, std::size_t r) {
    if (sets.size() < r) return false;
    if (r == 0) return true;
    bool small = true;
    for (const KSet& s : sets) small = small && s.back() < 64;
    if (small) {
        std::vector<std::uint64_t> masks;
        masks.reserve(sets.size());
        for (const KSet& s : sets) {
            std::uint64_t m = 0;
            for (VertexId v : s) m |= std::uint64_t{1} << v;
            masks.push_back(m);
        }
        return packs_masks(masks, r);
    }
    std::vector<const KSet*> ptrs;
    ptrs.reserve(sets.size());
    for (const KSet& s : sets) ptrs.push_back(&s);
    return packs(ptrs, r);
}

std::size_t packing_number(const std::vector<KSet>& sets, std::size_t cap) {
    std::size_t r = 0;
    while (r < cap && has_disjoint_sets(sets, r + 1)) ++r;
    return r;
}

namespace {

struct PackingSearch {
    std::uint64_t max_nodes;
    std::uint64_t nodes = 0;
    std::size_t best = 0;

    void go(const std::vector<const KSet*>& sets, std::size_t depth) {
        if (++nodes > max_nodes) throw BudgetExceeded("set packing exceeded node budget");
        best = std::max(best, depth);
        if (sets.empty()) return;
        std::vector<VertexId> verts;
        for (const KSet* s : sets) verts.insert(verts.end(), s->begin(), s->end());
        std::sort(verts.begin(), verts.end());
        // upper bound: every set takes |s| distinct vertices
        const std::size_t distinct = static_cast<std::size_t>(std::unique(verts.begin(), verts.end()) - verts.begin());
        const std::size_t width = sets.front()->size();
        if (depth + std::min(sets.size(), width == 0 ? sets.size() : distinct / width) <= best) return;
        // branch on the vertex in the fewest sets
        VertexId pivot = 0;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t i = 0; i < distinct; ++i) {
            std::size_t cnt = 0;
            for (const KSet* s : sets) cnt += s->contains(verts[i]);
            if (cnt < fewest) {
                fewest = cnt;
                pivot = verts[i];
            }
        }
        if (width == 0) {
            best = std::max(best, depth + 1);
            return;
        }
        std::vector<const KSet*> rest;
        for (const KSet* f : sets) {
            if (!f->contains(pivot)) continue;
            rest.clear();
            for (const KSet* s : sets)
                if (s->disjoint(*f)) rest.push_back(s);
            go(rest, depth + 1);
        }
        rest.clear();
        for (const KSet* s : sets)
            if (!s->contains(pivot)) rest.push_back(s);
        go(rest, depth);
    }
};

}  // namespace

std::size_t max_packing(const std::vector<KSet>& sets, std::uint64_t max_nodes) {
    std::vector<const KSet*> ptrs;
    ptrs.reserve(sets.size());
    for (const KSet& s : sets) ptrs.push_back(&s);
    PackingSearch search{max_nodes};
    search.go(ptrs, 0);
    return search.best;
}

}  // namespace hyperboot
