#include "hyperboot/search.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "hyperboot/canonical.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/process.hpp"
#include "hyperboot/rng.hpp"

namespace hyperboot {

std::size_t star_construction_size(std::size_t k, std::size_t t) {
    std::size_t total = 0;
    for (std::size_t h = 1; h + 2 <= t; ++h) total += h + 1 + h * (k - 2);
    return total;
}

StarConstruction build_star_construction(std::size_t k, std::size_t t, std::size_t n) {
    if (k < 3) throw std::invalid_argument("star construction needs k >= 3");
    if (t < 3) throw std::invalid_argument("star construction needs t >= 3");
    const std::size_t used = star_construction_size(k, t);
    if (n < used + k)
        throw std::invalid_argument("n too small for star construction: need at least " +
                                    std::to_string(used + k));
    StarConstruction out;
    std::vector<KSet> edges;
    std::size_t base = 0;
    for (std::size_t h = 1; h + 2 <= t; ++h) {
        const ExtensionPattern comp = extend(patterns::star(h), k);
        for (const KSet& e : comp.hypergraph().edges()) {
            std::vector<VertexId> vs;
            for (VertexId v : e) vs.push_back(static_cast<VertexId>(v + base));
            edges.push_back(KSet::from_sorted(vs));
        }
        out.hubs.push_back(static_cast<VertexId>(base));
        out.component_sizes.push_back(comp.vertex_count());
        base += comp.vertex_count();
    }
    out.isolated = n - base;
    out.graph = make_hypergraph(n, k, edges);
    return out;
}

Hypergraph star_construction(std::size_t k, std::size_t t, std::size_t n) {
    return build_star_construction(k, t, n).graph;
}

Hypergraph random_hypergraph(std::size_t n, std::size_t k, double edge_probability, std::uint64_t seed) {
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    Rng rng(seed);
    std::vector<KSet> edges;
    for_each_subset(n, k, [&](const KSet& s) {
        if (rng.chance(edge_probability)) edges.push_back(s);
        return true;
    });
    return make_hypergraph(n, k, edges);
}

std::string to_string(SearchMethod m) { return m == SearchMethod::Exhaustive ? "exhaustive" : "local"; }

bool better_witness(const Hypergraph& a, const Hypergraph& b) {
    if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
    return a.edges() < b.edges();
}

namespace {

struct Candidate {
    std::size_t tau = 0;
    Hypergraph graph;
    bool valid = false;
};

void offer(Candidate& best, std::size_t tau, const Hypergraph& h) {
    if (!best.valid || tau > best.tau || (tau == best.tau && better_witness(h, best.graph))) {
        best.tau = tau;
        best.graph = h;
        best.valid = true;
    }
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(0, i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(w, i);
        });
    for (auto& th : pool) th.join();
}

Hypergraph from_mask(std::size_t n, std::size_t k, const std::vector<KSet>& all, std::uint64_t mask) {
    std::vector<KSet> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) edges.push_back(all[i]);
    return make_hypergraph(n, k, edges);
}

}  // namespace

SearchResult exhaustive_max(std::size_t k, std::size_t n, const ExtensionPattern& p, std::size_t workers) {
    if (p.k() != k) throw std::invalid_argument("pattern uniformity differs from k");
    if (n < k) throw std::invalid_argument("n must be at least k");
    const std::uint64_t m = binomial(n, k);
    if (m > kExhaustiveMaxKSets)
        throw BudgetExceeded("exhaustive search needs C(n,k) <= " + std::to_string(kExhaustiveMaxKSets));

    std::vector<KSet> all;
    for_each_subset(n, k, [&](const KSet& s) {
        all.push_back(s);
        return true;
    });

    // Phase 1: smallest mask per isomorphism class.
    const std::uint64_t total = std::uint64_t{1} << m;
    workers = std::max<std::size_t>(1, workers);
    std::vector<std::unordered_map<std::string, std::uint64_t>> reps(workers);
    parallel_for(workers, workers, [&](std::size_t, std::size_t w) {
        const std::uint64_t lo = total * w / workers;
        const std::uint64_t hi = total * (w + 1) / workers;
        for (std::uint64_t mask = lo; mask < hi; ++mask) reps[w].emplace(canonical_code(from_mask(n, k, all, mask)), mask);
    });
    std::unordered_map<std::string, std::uint64_t> merged;
    for (auto& part : reps)
        for (auto& [code, mask] : part) {
            auto [it, inserted] = merged.emplace(code, mask);
            if (!inserted) it->second = std::min(it->second, mask);
        }
    std::vector<std::uint64_t> masks;
    masks.reserve(merged.size());
    for (auto& [code, mask] : merged) masks.push_back(mask);
    std::sort(masks.begin(), masks.end());

    // Phase 2: one process run per class.
    std::vector<Candidate> best(workers);
    parallel_for(masks.size(), workers, [&](std::size_t w, std::size_t i) {
        const Hypergraph h = from_mask(n, k, all, masks[i]);
        offer(best[w], tau_of(p, h), h);
    });
    Candidate overall;
    for (auto& b : best)
        if (b.valid) offer(overall, b.tau, b.graph);

    SearchResult res;
    res.best_tau = overall.tau;
    res.witness = overall.graph;
    res.explored = masks.size();
    res.method = SearchMethod::Exhaustive;
    return res;
}

namespace {

KSet random_kset(Rng& rng, std::size_t n, std::size_t k) {
    // Floyd's sampling of k distinct vertices.
    std::vector<VertexId> chosen;
    for (std::size_t j = n - k; j < n; ++j) {
        const auto r = static_cast<VertexId>(rng.below(j + 1));
        if (std::find(chosen.begin(), chosen.end(), r) == chosen.end())
            chosen.push_back(r);
        else
            chosen.push_back(static_cast<VertexId>(j));
    }
    return KSet::from_unsorted(chosen);
}

Hypergraph toggle(const Hypergraph& h, const KSet& e) {
    if (!h.contains(e)) return h.with_edges(std::span<const KSet>(&e, 1));
    std::vector<KSet> rest;
    rest.reserve(h.edge_count());
    for (const KSet& x : h.edges())
        if (x != e) rest.push_back(x);
    return make_hypergraph(h.n(), h.k(), rest);
}

bool is_star_pattern(const ExtensionPattern& p) {
    const std::size_t t = p.center_size();
    return t >= 3 && p.graph() == patterns::star(t - 1);
}

Hypergraph restart_start(std::size_t r, std::size_t k, std::size_t n, const ExtensionPattern& p, Rng& rng) {
    if (r == 0) return Hypergraph(n, k);
    if (r == 1 && k >= 3 && is_star_pattern(p) && n >= star_construction_size(k, p.center_size()) + k)
        return star_construction(k, p.center_size(), n);
    const double density = 0.02 + 0.3 * rng.uniform();
    return random_hypergraph(n, k, density, rng.next());
}

}  // namespace

SearchResult local_search_max(std::size_t k, std::size_t n, const ExtensionPattern& p, LocalSearchParams params) {
    if (p.k() != k) throw std::invalid_argument("pattern uniformity differs from k");
    const std::size_t restarts = std::max<std::size_t>(1, params.restarts);
    const std::size_t workers = std::max<std::size_t>(1, params.workers);
    std::vector<Candidate> best(workers);
    std::vector<std::uint64_t> evaluations(restarts, 0);

    parallel_for(restarts, workers, [&](std::size_t w, std::size_t r) {
        Rng rng(derive_seed(params.seed, r));
        Hypergraph current = restart_start(r, k, n, p, rng);
        std::size_t current_tau = tau_of(p, current);
        std::uint64_t evals = 1;
        Candidate local;
        offer(local, current_tau, current);
        for (std::size_t move = 0; move < params.moves; ++move) {
            const Hypergraph next = toggle(current, random_kset(rng, n, k));
            const std::size_t tau = tau_of(p, next);
            ++evals;
            offer(local, tau, next);
            // plateau moves keep the walk going when no toggle improves
            if (tau >= current_tau) {
                current = next;
                current_tau = tau;
            }
        }
        evaluations[r] = evals;
        offer(best[w], local.tau, local.graph);
    });

    Candidate overall;
    for (auto& b : best)
        if (b.valid) offer(overall, b.tau, b.graph);
    if (tau_of(p, overall.graph) != overall.tau) throw std::logic_error("local search witness failed replay");

    SearchResult res;
    res.best_tau = overall.tau;
    res.witness = overall.graph;
    for (auto e : evaluations) res.explored += e;
    res.method = SearchMethod::Local;
    return res;
}

}  // namespace hyperboot
