#include "hyperboot/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hyperboot/errors.hpp"

namespace hyperboot {

namespace {

struct Compact {
    std::size_t vertices = 0;
    std::vector<std::vector<std::size_t>> edges;  // sorted compact ids
    std::vector<std::size_t> degree;
};

Compact compact(const std::vector<KSet>& edges) {
    std::map<VertexId, std::size_t> ids;
    for (const KSet& e : edges)
        for (VertexId v : e) ids.emplace(v, 0);
    std::size_t next = 0;
    for (auto& [v, id] : ids) id = next++;
    Compact c;
    c.vertices = ids.size();
    c.degree.assign(c.vertices, 0);
    for (const KSet& e : edges) {
        std::vector<std::size_t> ce;
        for (VertexId v : e) {
            ce.push_back(ids[v]);
            ++c.degree[ids[v]];
        }
        c.edges.push_back(std::move(ce));
    }
    return c;
}

class IsoSearch {
public:
    IsoSearch(const Compact& a, const Compact& b) : a_(a), b_(b) {
        for (const auto& e : b.edges) b_edges_.insert(e);
        order_.resize(a.vertices);
        for (std::size_t v = 0; v < a.vertices; ++v) order_[v] = v;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t x, std::size_t y) { return a.degree[x] > a.degree[y]; });
        std::vector<std::size_t> pos(a.vertices);
        for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
        completes_.assign(a.vertices, {});
        for (std::size_t ei = 0; ei < a.edges.size(); ++ei) {
            std::size_t last = 0;
            for (std::size_t v : a.edges[ei]) last = std::max(last, pos[v]);
            completes_[last].push_back(ei);
        }
        map_.assign(a.vertices, 0);
        taken_.assign(b.vertices, false);
    }

    bool run() { return extend(0); }

private:
    bool extend(std::size_t i) {
        if (i == order_.size()) return true;
        const std::size_t x = order_[i];
        for (std::size_t y = 0; y < b_.vertices; ++y) {
            if (taken_[y] || b_.degree[y] != a_.degree[x]) continue;
            map_[x] = y;
            taken_[y] = true;
            bool ok = true;
            for (std::size_t ei : completes_[i]) {
                std::vector<std::size_t> img;
                for (std::size_t v : a_.edges[ei]) img.push_back(map_[v]);
                std::sort(img.begin(), img.end());
                if (!b_edges_.count(img)) {
                    ok = false;
                    break;
                }
            }
            if (ok && extend(i + 1)) return true;
            taken_[y] = false;
        }
        return false;
    }

    const Compact& a_;
    const Compact& b_;
    std::set<std::vector<std::size_t>> b_edges_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> completes_;
    std::vector<std::size_t> map_;
    std::vector<bool> taken_;
};

template <class Visit>
void for_each_edge_subset(const std::vector<KSet>& pool, std::size_t r, Visit&& visit) {
    const std::size_t m = pool.size();
    if (r > m) return;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    std::vector<KSet> chosen(r);
    while (true) {
        for (std::size_t i = 0; i < r; ++i) chosen[i] = pool[idx[i]];
        visit(chosen);
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == m - r + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void check_budget(std::uint64_t m, std::uint64_t r, std::uint64_t budget) {
    if (binomial(m, r) > budget) throw BudgetExceeded("oracle enumeration exceeds subset budget");
}

std::size_t span_size(const std::vector<KSet>& edges) {
    std::vector<VertexId> all;
    for (const KSet& e : edges) all.insert(all.end(), e.begin(), e.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

}  // namespace

bool spans_isomorphic(const std::vector<KSet>& a, const std::vector<KSet>& b) {
    if (a.size() != b.size()) return false;
    const Compact ca = compact(a);
    const Compact cb = compact(b);
    if (ca.vertices != cb.vertices) return false;
    auto da = ca.degree;
    auto db = cb.degree;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return IsoSearch(ca, cb).run();
}

std::uint64_t count_copies_oracle(const Hypergraph& pattern, const Hypergraph& host, std::uint64_t budget) {
    return list_copies_oracle(pattern, host, budget).size();
}

std::vector<std::vector<KSet>> list_copies_oracle(const Hypergraph& pattern, const Hypergraph& host,
                                                  std::uint64_t budget) {
    const std::size_t r = pattern.edge_count();
    check_budget(host.edge_count(), r, budget);
    const std::size_t pv = span_size(pattern.edges());
    std::vector<std::vector<KSet>> out;
    for_each_edge_subset(host.edges(), r, [&](const std::vector<KSet>& chosen) {
        if (span_size(chosen) == pv && spans_isomorphic(pattern.edges(), chosen)) out.push_back(chosen);
    });
    return out;
}

std::uint64_t count_copies_through(const Hypergraph& pattern, const Hypergraph& host, const KSet& e,
                                   std::uint64_t budget) {
    host.validate_edge(e);
    if (host.contains(e)) throw std::invalid_argument("edge already present");
    const std::size_t r = pattern.edge_count();
    if (r == 0) return 0;
    check_budget(host.edge_count(), r - 1, budget);
    const std::size_t pv = span_size(pattern.edges());
    std::uint64_t count = 0;
    std::vector<KSet> chosen;
    for_each_edge_subset(host.edges(), r - 1, [&](const std::vector<KSet>& rest) {
        chosen = rest;
        chosen.push_back(e);
        if (span_size(chosen) == pv && spans_isomorphic(pattern.edges(), chosen)) ++count;
    });
    return count;
}

std::vector<KSet> oracle_frontier(const Hypergraph& pattern, const Hypergraph& host, std::uint64_t budget) {
    std::vector<KSet> out;
    for (const KSet& e : absent_ksets(host))
        if (count_copies_through(pattern, host, e, budget) > 0) out.push_back(e);
    return out;
}

}  // namespace hyperboot
