#include "hyperboot/embedding.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hyperboot/errors.hpp"
#include "hyperboot/matching.hpp"

namespace hyperboot {

KSet CopyWitness::center_vertices(std::size_t t) const {
    return KSet::from_unsorted(std::span<const VertexId>(vertex_map.data(), t));
}

std::vector<KSet> CopyWitness::center_pairs(const ExtensionPattern& p) const {
    std::vector<KSet> out;
    for (const auto& [u, v] : p.graph().pairs()) out.push_back(KSet::pair(vertex_map[u], vertex_map[v]));
    std::sort(out.begin(), out.end());
    return out;
}

bool CopyWitness::uses(const KSet& e) const { return std::find(edges.begin(), edges.end(), e) != edges.end(); }

const CopyWitness* Frontier::witness_for(const KSet& e) const {
    auto it = std::lower_bound(new_edges.begin(), new_edges.end(), e);
    if (it == new_edges.end() || *it != e) return nullptr;
    return &witnesses[static_cast<std::size_t>(it - new_edges.begin())];
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr int kUnset = -1;

std::vector<KSet> link_sets(const Hypergraph& h, VertexId x) {
    std::vector<KSet> sets;
    for (VertexId y : h.neighbours(x))
        for (const KSet& s : h.link(x, y))
            if (y < s.front()) sets.push_back(s.with(y));
    return sets;
}

std::size_t greedy_packing(const std::vector<KSet>& sets, std::size_t n) {
    std::vector<std::uint8_t> taken(n, 0);
    std::size_t count = 0;
    for (const KSet& s : sets) {
        bool free = true;
        for (VertexId v : s) free = free && !taken[v];
        if (!free) continue;
        for (VertexId v : s) taken[v] = 1;
        ++count;
    }
    return count;
}

/// Backtracking search for copies of an extension pattern.
///
/// Center vertices are assigned in G-vertex order with ascending host
/// candidates, so leaves come out in lexicographic center-map order. Sleeves
/// are then assigned in G-edge order from each pair's link, ascending; the
/// first complete assignment is the least one for that center map. One G-edge
/// may be pinned to a must-use edge outside the host with a fixed sleeve.
///
/// Pruning, all exact: a host vertex must have capacity for the G-edges it
/// carries; once two or more G-edges have both ends placed, their sleeves
/// must still admit a disjoint choice; optionally, interchangeable G-vertices
/// take increasing host vertices.
class Searcher {
public:
    Searcher(const CopyFinder& finder, SearchBudget budget)
        : f_(finder), p_(finder.pattern()), g_(p_.graph()), h_(finder.host()), budget_(budget),
          t_(g_.vertex_count()), m_(g_.edge_count()), sigma_(t_, kUnset), fixed_(t_, false),
          used_(h_.n(), 0), sleeves_(m_), mark_(h_.n(), 0) {}

    void reset() {
        for (std::size_t i = 0; i < t_; ++i) {
            if (sigma_[i] != kUnset) used_[static_cast<std::size_t>(sigma_[i])] = 0;
            sigma_[i] = kUnset;
            fixed_[i] = false;
        }
        for (VertexId v : must_sleeve_) used_[v] = 0;
        must_edge_ = kNone;
        must_sleeve_ = KSet{};
        bound_ = nullptr;
        break_twins_ = false;
    }

    /// Pins G-vertex i to host vertex v. False if v is taken.
    bool fix(std::size_t i, VertexId v) {
        if (used_[v]) return false;
        sigma_[i] = v;
        fixed_[i] = true;
        used_[v] = 1;
        return true;
    }

    /// Pins G-edge j to an edge outside the host. Its endpoints must be fixed first.
    bool pin_edge(std::size_t j, const KSet& sleeve) {
        for (VertexId v : sleeve)
            if (used_[v]) return false;
        for (VertexId v : sleeve) used_[v] = 1;
        must_edge_ = j;
        must_sleeve_ = sleeve;
        return true;
    }

    void set_bound(const std::vector<VertexId>* best) { bound_ = best; }
    void set_break_twins(bool on) { break_twins_ = on; }

    /// Calls on_leaf(witness) for each feasible center map in lexicographic
    /// order; on_leaf returns false to stop.
    template <class OnLeaf>
    void run(OnLeaf&& on_leaf) {
        for (std::size_t i = 0; i < t_; ++i)
            if (fixed_[i] && !has_capacity(i, sigma(i))) return;
        for (std::size_t j = 0; j < m_; ++j) {
            if (j == must_edge_) continue;
            const auto [u, v] = g_.pair(j);
            if (fixed_[u] && fixed_[v] && !link_available(sigma(u), sigma(v))) return;
        }
        for (std::size_t i = 0; i < t_; ++i)
            if (fixed_[i] && !residual_capacity(i, sigma(i), 0)) return;
        assign_center(0, bound_ != nullptr, on_leaf);
    }

private:
    VertexId sigma(std::size_t i) const { return static_cast<VertexId>(sigma_[i]); }
    bool assigned(std::size_t z, std::size_t cursor) const { return fixed_[z] || z < cursor; }

    void tick() {
        if (budget_.max_nodes != 0 && ++nodes_ > budget_.max_nodes)
            throw BudgetExceeded("copy search exceeded node budget");
    }

    bool free_of_used(const KSet& s) const {
        for (VertexId v : s)
            if (used_[v]) return false;
        return true;
    }

    bool link_available(VertexId x, VertexId y) const {
        for (const KSet& s : h_.link(x, y))
            if (free_of_used(s)) return true;
        return false;
    }

    bool has_capacity(std::size_t i, VertexId v) const { return f_.capacity(v) >= needed(i); }

    std::size_t needed(std::size_t i) const {
        std::size_t need = g_.degree(i);
        if (must_edge_ != kNone && (g_.pair(must_edge_).first == i || g_.pair(must_edge_).second == i)) --need;
        return need;
    }

    /// Capacity of x for G-vertex i given the vertices already in use: admissible
    /// neighbours are free vertices or images of i's assigned G-neighbours.
    bool residual_capacity(std::size_t i, VertexId x, std::size_t cursor) {
        const std::size_t need = needed(i);
        if (need < 2) return true;
        // each used vertex meets at most one set of a packing
        std::size_t blocked = must_sleeve_.size();
        for (std::size_t z = 0; z < t_; ++z)
            if (assigned(z, cursor) && sigma(z) != x) ++blocked;
        if (f_.greedy_capacity(x) >= need + blocked) return true;
        auto admissible = [&](VertexId y) {
            if (!used_[y]) return true;
            for (std::size_t j : g_.incident(i)) {
                if (j == must_edge_) continue;
                const auto [a, b] = g_.pair(j);
                const std::size_t z = a == i ? b : a;
                if (assigned(z, cursor) && sigma(z) == y) return true;
            }
            return false;
        };

        // greedy first; most calls end here
        std::size_t greedy = 0;
        marked_.clear();
        for (VertexId y : h_.neighbours(x)) {
            if (greedy >= need) break;
            if (!admissible(y) || mark_[y]) continue;
            for (const KSet& s : h_.link(x, y)) {
                if (!free_of_used(s)) continue;
                bool clash = false;
                for (VertexId z : s) clash = clash || mark_[z];
                if (clash) continue;
                mark_[y] = 1;
                marked_.push_back(y);
                for (VertexId z : s) {
                    mark_[z] = 1;
                    marked_.push_back(z);
                }
                ++greedy;
                break;
            }
        }
        for (VertexId z : marked_) mark_[z] = 0;
        if (greedy >= need) return true;

        sets_.clear();
        std::size_t usable = 0;
        for (VertexId y : h_.neighbours(x)) {
            if (!admissible(y)) continue;
            bool any = false;
            for (const KSet& s : h_.link(x, y)) {
                if (!free_of_used(s)) continue;
                any = true;
                if (used_[y] || y < s.front()) sets_.push_back(s.with(y));
            }
            if (any) ++usable;
        }
        if (usable < need) return false;
        if (h_.k() == 2) return true;
        return has_disjoint_sets(sets_, need);
    }

    bool consistent(std::size_t i, VertexId v) const {
        if (!has_capacity(i, v)) return false;
        for (std::size_t j : g_.incident(i)) {
            if (j == must_edge_) continue;
            const auto [a, b] = g_.pair(j);
            const std::size_t z = a == i ? b : a;
            if (!assigned(z, i)) continue;
            if (!link_available(v, sigma(z))) return false;
        }
        return true;
    }

    /// Disjoint sleeves exist for every G-edge whose ends are placed at cursor.
    bool packing_feasible(std::size_t cursor) {
        placed_.clear();
        for (std::size_t j = 0; j < m_; ++j) {
            if (j == must_edge_) continue;
            const auto [u, v] = g_.pair(j);
            if (assigned(u, cursor + 1) && assigned(v, cursor + 1)) placed_.push_back(j);
        }
        if (placed_.size() < 2) return true;
        return pack(0);
    }

    bool pack(std::size_t idx) {
        tick();
        if (idx == placed_.size()) return true;
        const auto [u, v] = g_.pair(placed_[idx]);
        for (const KSet& s : h_.link(sigma(u), sigma(v))) {
            if (!free_of_used(s)) continue;
            for (VertexId x : s) used_[x] = 1;
            const bool ok = pack(idx + 1);
            for (VertexId x : s) used_[x] = 0;
            if (ok) return true;
        }
        return false;
    }

    bool closes_edge(std::size_t i) const {
        for (std::size_t j : g_.incident(i)) {
            if (j == must_edge_) continue;
            const auto [a, b] = g_.pair(j);
            if (assigned(a == i ? b : a, i)) return true;
        }
        return false;
    }

    template <class OnLeaf>
    bool assign_center(std::size_t i, bool tight, OnLeaf& on_leaf) {
        tick();
        if (i == t_) {
            bool found = false;
            return sleeves_from(0, on_leaf, found);
        }
        if (fixed_[i]) {
            const VertexId v = sigma(i);
            if (tight && v > (*bound_)[i]) return true;
            if (!consistent(i, v)) return true;
            if (closes_edge(i) && !packing_feasible(i)) return true;
            return assign_center(i + 1, tight && v == (*bound_)[i], on_leaf);
        }
        int floor = -1;
        if (break_twins_)
            for (std::size_t tw : f_.earlier_twins(i))
                if (!fixed_[tw]) floor = std::max(floor, sigma_[tw]);

        std::size_t anchor = kNone;
        for (std::size_t j : g_.incident(i)) {
            if (j == must_edge_) continue;
            const auto [a, b] = g_.pair(j);
            const std::size_t z = a == i ? b : a;
            if (assigned(z, i) &&
                (anchor == kNone || h_.neighbours(sigma(z)).size() < h_.neighbours(sigma(anchor)).size()))
                anchor = z;
        }
        const bool closes = closes_edge(i);
        auto try_vertex = [&](VertexId v) -> int {  // 1 continue, 0 stop, -1 past bound
            if (static_cast<int>(v) <= floor || used_[v]) return 1;
            if (tight && v > (*bound_)[i]) return -1;
            if (!consistent(i, v)) return 1;
            sigma_[i] = v;
            used_[v] = 1;
            bool go_on = true;
            if (residual_capacity(i, v, i) && (!closes || packing_feasible(i))) go_on = assign_center(i + 1, tight && v == (*bound_)[i], on_leaf);
            used_[v] = 0;
            sigma_[i] = kUnset;
            return go_on ? 1 : 0;
        };
        if (anchor != kNone) {
            for (VertexId v : h_.neighbours(sigma(anchor))) {
                const int r = try_vertex(v);
                if (r == 0) return false;
                if (r < 0) break;
            }
        } else {
            for (std::size_t v = 0; v < h_.n(); ++v) {
                const int r = try_vertex(static_cast<VertexId>(v));
                if (r == 0) return false;
                if (r < 0) break;
            }
        }
        return true;
    }

    // Returns false when the visitor asked to stop.
    template <class OnLeaf>
    bool sleeves_from(std::size_t j, OnLeaf& on_leaf, bool& found) {
        tick();
        if (j == m_) {
            found = true;
            return on_leaf(make_witness());
        }
        if (j == must_edge_) {
            sleeves_[j] = must_sleeve_;
            return sleeves_from(j + 1, on_leaf, found);
        }
        const auto [u, v] = g_.pair(j);
        for (const KSet& s : h_.link(sigma(u), sigma(v))) {
            if (!free_of_used(s)) continue;
            for (VertexId x : s) used_[x] = 1;
            sleeves_[j] = s;
            const bool go_on = sleeves_from(j + 1, on_leaf, found);
            for (VertexId x : s) used_[x] = 0;
            if (!go_on) return false;
            if (found) return true;  // least assignment for this center map
        }
        return true;
    }

    CopyWitness make_witness() const {
        CopyWitness w;
        w.vertex_map.reserve(p_.vertex_count());
        for (std::size_t i = 0; i < t_; ++i) w.vertex_map.push_back(sigma(i));
        for (std::size_t j = 0; j < m_; ++j) {
            for (VertexId x : sleeves_[j]) w.vertex_map.push_back(x);
            const auto [u, v] = g_.pair(j);
            w.edges.push_back(sleeves_[j].with(sigma(u)).with(sigma(v)));
        }
        return w;
    }

    const CopyFinder& f_;
    const ExtensionPattern& p_;
    const PatternGraph& g_;
    const Hypergraph& h_;
    SearchBudget budget_;
    std::uint64_t nodes_ = 0;
    std::size_t t_;
    std::size_t m_;
    std::vector<int> sigma_;
    std::vector<bool> fixed_;
    std::vector<std::uint8_t> used_;
    std::vector<KSet> sleeves_;
    std::vector<std::size_t> placed_;
    std::vector<KSet> sets_;
    std::vector<std::uint8_t> mark_;
    std::vector<VertexId> marked_;
    std::size_t must_edge_ = kNone;
    KSet must_sleeve_;
    const std::vector<VertexId>* bound_ = nullptr;
    bool break_twins_ = false;
};

template <class Each>
void for_each_placement(const PatternGraph& g, const KSet& e, Each&& each) {
    for (std::size_t j = 0; j < g.edge_count(); ++j)
        for (std::size_t ia = 0; ia < e.size(); ++ia)
            for (std::size_t ib = 0; ib < e.size(); ++ib)
                if (ia != ib) each(j, e[ia], e[ib], e.without(e[ia]).without(e[ib]));
}

std::optional<CopyWitness> least_using_impl(Searcher& s, const PatternGraph& g, const KSet& e) {
    std::optional<CopyWitness> best;
    for_each_placement(g, e, [&](std::size_t j, VertexId a, VertexId b, const KSet& sleeve) {
        s.reset();
        s.set_break_twins(true);
        if (!s.fix(g.pair(j).first, a) || !s.fix(g.pair(j).second, b)) return;
        if (!s.pin_edge(j, sleeve)) return;
        if (best) s.set_bound(&best->vertex_map);
        std::optional<CopyWitness> found;
        s.run([&](const CopyWitness& w) {
            found = w;
            return false;
        });
        if (found && (!best || *found < *best)) best = std::move(found);
    });
    s.reset();
    return best;
}

void check_absent(const Hypergraph& host, const KSet& e) {
    host.validate_edge(e);
    if (host.contains(e)) throw std::invalid_argument("edge " + e.to_string() + " is already present");
}

}  // namespace

CopyFinder::CopyFinder(const ExtensionPattern& p, const Hypergraph& host) : p_(p), h_(host) {
    if (p.k() != host.k()) throw std::invalid_argument("pattern and host uniformity differ");
    capacity_.resize(host.n());
    std::size_t max_degree = 0;
    for (std::size_t i = 0; i < p.center_size(); ++i) max_degree = std::max(max_degree, p.graph().degree(i));
    greedy_.resize(host.n());
    for (std::size_t v = 0; v < host.n(); ++v) {
        if (host.k() == 2) {
            capacity_[v] = greedy_[v] = host.neighbours(static_cast<VertexId>(v)).size();
            continue;
        }
        const std::vector<KSet> sets = link_sets(host, static_cast<VertexId>(v));
        greedy_[v] = greedy_packing(sets, host.n());
        capacity_[v] = greedy_[v] >= max_degree ? max_degree : packing_number(sets, max_degree);
    }
    const auto& g = p.graph();
    twins_.assign(g.vertex_count(), {});
    for (std::size_t j = 0; j < g.vertex_count(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            bool same = true;
            for (std::size_t z = 0; z < g.vertex_count() && same; ++z)
                if (z != i && z != j && g.adjacent(i, z) != g.adjacent(j, z)) same = false;
            if (same) twins_[j].push_back(i);
        }
}

std::optional<CopyWitness> CopyFinder::least_using(const KSet& e, SearchBudget budget) const {
    check_absent(h_, e);
    Searcher s(*this, budget);
    return least_using_impl(s, p_.graph(), e);
}

std::optional<CopyWitness> CopyFinder::least_through_pair(const KSet& pair, SearchBudget budget) const {
    if (pair.size() != 2) throw std::invalid_argument("expected a vertex pair");
    if (pair.back() >= h_.n() || !h_.adjacent(pair[0], pair[1])) return std::nullopt;
    Searcher s(*this, budget);
    std::optional<CopyWitness> best;
    const auto& g = p_.graph();
    for (std::size_t j = 0; j < g.edge_count(); ++j) {
        for (int flip = 0; flip < 2; ++flip) {
            s.reset();
            s.set_break_twins(true);
            if (!s.fix(g.pair(j).first, flip ? pair[1] : pair[0]) ||
                !s.fix(g.pair(j).second, flip ? pair[0] : pair[1]))
                continue;
            if (best) s.set_bound(&best->vertex_map);
            std::optional<CopyWitness> found;
            s.run([&](const CopyWitness& w) {
                found = w;
                return false;
            });
            if (found && (!best || *found < *best)) best = std::move(found);
        }
    }
    return best;
}

std::optional<CopyWitness> CopyFinder::with_center_map(std::span<const VertexId> center, SearchBudget budget) const {
    if (center.size() != p_.center_size()) throw std::invalid_argument("center map has wrong size");
    Searcher s(*this, budget);
    for (std::size_t i = 0; i < center.size(); ++i) {
        if (center[i] >= h_.n()) return std::nullopt;
        if (!s.fix(i, center[i])) return std::nullopt;
    }
    std::optional<CopyWitness> found;
    s.run([&](const CopyWitness& w) {
        found = w;
        return false;
    });
    return found;
}

void CopyFinder::for_each(const std::optional<KSet>& must_use, const std::function<bool(const CopyWitness&)>& visit,
                          SearchBudget budget, bool one_per_center) const {
    Searcher s(*this, budget);
    s.set_break_twins(one_per_center);
    if (!must_use) {
        s.run([&](const CopyWitness& w) { return visit(w); });
        return;
    }
    const KSet& e = *must_use;
    check_absent(h_, e);
    std::vector<CopyWitness> all;
    const auto& g = p_.graph();
    for_each_placement(g, e, [&](std::size_t j, VertexId a, VertexId b, const KSet& sleeve) {
        s.reset();
        s.set_break_twins(one_per_center);
        if (!s.fix(g.pair(j).first, a) || !s.fix(g.pair(j).second, b)) return;
        if (!s.pin_edge(j, sleeve)) return;
        s.run([&](const CopyWitness& w) {
            all.push_back(w);
            return true;
        });
    });
    std::sort(all.begin(), all.end());
    const auto t = static_cast<long>(p_.center_size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i > 0 && std::equal(all[i].vertex_map.begin(), all[i].vertex_map.begin() + t,
                                all[i - 1].vertex_map.begin()))
            continue;
        if (!visit(all[i])) return;
    }
}

bool validate_witness(const ExtensionPattern& p, const Hypergraph& host, const CopyWitness& w,
                      const std::optional<KSet>& extra) {
    if (w.vertex_map.size() != p.vertex_count() || w.edges.size() != p.edge_count()) return false;
    std::vector<VertexId> sorted = w.vertex_map;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (!sorted.empty() && sorted.back() >= host.n()) return false;
    for (std::size_t j = 0; j < p.edge_count(); ++j) {
        std::vector<VertexId> img;
        for (VertexId x : p.edge(j)) img.push_back(w.vertex_map[x]);
        const KSet he = KSet::from_unsorted(img);
        if (he != w.edges[j]) return false;
        if (!host.contains(he) && !(extra && *extra == he)) return false;
    }
    return true;
}

std::optional<CopyWitness> creates_new_copy(const ExtensionPattern& p, const Hypergraph& host, const KSet& e) {
    return CopyFinder(p, host).least_using(e);
}

Frontier frontier(const ExtensionPattern& p, const Hypergraph& host, std::size_t workers) {
    const CopyFinder finder(p, host);
    const std::vector<KSet> candidates = absent_ksets(host);
    workers = std::max<std::size_t>(1, std::min(workers, candidates.size() / 64 + 1));

    std::vector<std::vector<std::pair<KSet, CopyWitness>>> found(workers);
    auto work = [&](std::size_t w) {
        Searcher s(finder, {});
        const std::size_t lo = candidates.size() * w / workers;
        const std::size_t hi = candidates.size() * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i)
            if (auto wit = least_using_impl(s, p.graph(), candidates[i]))
                found[w].emplace_back(candidates[i], std::move(*wit));
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    Frontier out;
    for (auto& part : found)
        for (auto& [e, wit] : part) {
            out.new_edges.push_back(e);
            out.witnesses.push_back(std::move(wit));
        }
    return out;
}

void enumerate_extension_embeddings(const ExtensionPattern& p, const Hypergraph& host,
                                    const std::optional<KSet>& must_use,
                                    const std::function<bool(const CopyWitness&)>& visit, SearchBudget budget) {
    CopyFinder(p, host).for_each(must_use, visit, budget, false);
}

std::optional<CopyWitness> least_copy_through_pair(const ExtensionPattern& p, const Hypergraph& host,
                                                   const KSet& pair, SearchBudget budget) {
    return CopyFinder(p, host).least_through_pair(pair, budget);
}

std::optional<CopyWitness> copy_with_center_map(const ExtensionPattern& p, const Hypergraph& host,
                                                std::span<const VertexId> center, SearchBudget budget) {
    return CopyFinder(p, host).with_center_map(center, budget);
}

}  // namespace hyperboot
