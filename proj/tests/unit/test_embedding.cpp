#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hyperboot/embedding.hpp"
#include "hyperboot/extension.hpp"
#include "hyperboot/oracle.hpp"
#include "hyperboot/rng.hpp"
#include "hyperboot/search.hpp"

using namespace hyperboot;

namespace {

Hypergraph hg(std::size_t n, std::size_t k, std::vector<KSet> e) { return make_hypergraph(n, k, e); }

const ExtensionPattern& cherry() {
    static const ExtensionPattern p = extend(patterns::star(2), 3);
    return p;
}

std::vector<CopyWitness> all_copies(const ExtensionPattern& p, const Hypergraph& h,
                                    const std::optional<KSet>& must_use = std::nullopt) {
    std::vector<CopyWitness> out;
    enumerate_extension_embeddings(p, h, must_use, [&](const CopyWitness& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

}  // namespace

TEST_CASE("count_copies_oracle examples") {
    const Hypergraph single = hg(3, 3, {{0, 1, 2}});
    CHECK(count_copies_oracle(single, hg(6, 3, {{0, 1, 2}, {0, 1, 3}, {2, 4, 5}, {3, 4, 5}})) == 4);
    CHECK(count_copies_oracle(cherry().hypergraph(), cherry().hypergraph()) == 1);
    CHECK(count_copies_oracle(cherry().hypergraph(), hg(8, 3, {{0, 1, 2}, {2, 3, 4}, {5, 6, 7}})) == 1);
}

TEST_CASE("creates_new_copy examples") {
    const Hypergraph h = hg(6, 3, {{0, 1, 2}});
    const auto w = creates_new_copy(cherry(), h, KSet{2, 3, 4});
    REQUIRE(w);
    CHECK(w->vertex_map[0] == 2);
    CHECK(validate_witness(cherry(), h, *w, KSet{2, 3, 4}));
    CHECK_FALSE(creates_new_copy(cherry(), h, KSet{0, 1, 3}));

    const ExtensionPattern edge3 = extend(patterns::edge(), 3);
    const auto e = creates_new_copy(edge3, h, KSet{3, 4, 5});
    REQUIRE(e);
    CHECK(e->edges == std::vector<KSet>{{3, 4, 5}});
    CHECK_THROWS_AS(creates_new_copy(edge3, h, KSet{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("frontier examples") {
    const Frontier f = frontier(cherry(), hg(5, 3, {{0, 1, 2}}));
    CHECK(f.new_edges == std::vector<KSet>{{0, 3, 4}, {1, 3, 4}, {2, 3, 4}});
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.witnesses[i].uses(f.new_edges[i]));

    const Frontier all = frontier(extend(patterns::edge(), 3), Hypergraph(4, 3));
    CHECK(all.size() == 4);

    const Frontier none = frontier(extend(patterns::cycle(3), 3), hg(9, 3, {{0, 1, 2}}));
    CHECK(none.empty());
}

TEST_CASE("enumerate_extension_embeddings examples") {
    const auto ws = all_copies(cherry(), hg(5, 3, {{0, 1, 2}, {2, 3, 4}}));
    REQUIRE_FALSE(ws.empty());
    CHECK(std::any_of(ws.begin(), ws.end(), [](const CopyWitness& w) { return w.vertex_map[0] == 2; }));
    CHECK(all_copies(cherry(), hg(5, 3, {{0, 1, 2}, {0, 1, 3}})).empty());
    CHECK_THROWS_AS(all_copies(cherry(), hg(5, 3, {{0, 1, 2}}), KSet{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("witnesses are sound and sorted by center map") {
    Rng rng(21);
    for (const char* name : {"path2", "star3", "triangle", "path3", "cycle4"})
        for (std::size_t k : {3, 4})
            for (int rep = 0; rep < 15; ++rep) {
                const ExtensionPattern p = make_pattern(name, k);
                const Hypergraph h = random_hypergraph(9, k, 0.05 + 0.2 * rng.uniform(), rng.next());
                const auto ws = all_copies(p, h);
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    REQUIRE(validate_witness(p, h, ws[i]));
                    if (i) {
                        const auto a = ws[i - 1].center_map(p.center_size());
                        const auto b = ws[i].center_map(p.center_size());
                        REQUIRE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
                    }
                }
            }
}

TEST_CASE("least witness equals the minimum over full enumeration") {
    Rng rng(22);
    for (const char* name : {"path2", "star3", "triangle"})
        for (int rep = 0; rep < 20; ++rep) {
            const ExtensionPattern p = make_pattern(name, 3);
            const Hypergraph h = random_hypergraph(8, 3, 0.1 + 0.2 * rng.uniform(), rng.next());
            const auto absent = absent_ksets(h);
            for (std::size_t i = 0; i < absent.size(); i += 7) {
                const KSet& e = absent[i];
                const auto got = creates_new_copy(p, h, e);
                const auto ws = all_copies(p, h, e);
                REQUIRE(got.has_value() == !ws.empty());
                if (!got) continue;
                const auto best = std::min_element(ws.begin(), ws.end(), [](const auto& a, const auto& b) {
                    return a.vertex_map < b.vertex_map;
                });
                REQUIRE(got->vertex_map == best->vertex_map);
            }
        }
}

TEST_CASE("frontier is monotone under edge addition") {
    Rng rng(23);
    for (const char* name : {"edge", "path2", "star3", "triangle"})
        for (int rep = 0; rep < 25; ++rep) {
            const ExtensionPattern p = make_pattern(name, 3);
            const Hypergraph h = random_hypergraph(8, 3, 0.05 + 0.15 * rng.uniform(), rng.next());
            std::vector<KSet> extra;
            for (const KSet& e : absent_ksets(h))
                if (rng.chance(0.1)) extra.push_back(e);
            const Hypergraph bigger = h.with_edges(extra);
            for (const KSet& e : frontier(p, h).new_edges)
                if (!bigger.contains(e)) REQUIRE(creates_new_copy(p, bigger, e));
        }
}

TEST_CASE("frontier does not depend on the worker count") {
    Rng rng(24);
    for (const char* name : {"path2", "star3", "triangle"})
        for (int rep = 0; rep < 6; ++rep) {
            const ExtensionPattern p = make_pattern(name, 3);
            const Hypergraph h = random_hypergraph(11, 3, 0.05 + 0.1 * rng.uniform(), rng.next());
            const Frontier one = frontier(p, h, 1);
            for (std::size_t w : {2, 3, 4}) {
                const Frontier many = frontier(p, h, w);
                REQUIRE(many.new_edges == one.new_edges);
                for (std::size_t i = 0; i < one.size(); ++i)
                    REQUIRE(many.witnesses[i].vertex_map == one.witnesses[i].vertex_map);
            }
        }
}

TEST_CASE("disjoint-sleeve copies match subhypergraph isomorphism on small hosts") {
    // every 3-graph with at most 4 edges on 8 vertices
    std::vector<KSet> ksets;
    for_each_subset(8, 3, [&](const KSet& s) {
        ksets.push_back(s);
        return true;
    });
    std::vector<ExtensionPattern> pats;
    for (const char* name : {"path2", "star3", "triangle"}) pats.push_back(make_pattern(name, 3));
    std::size_t hosts = 0, with_copy = 0;
    std::vector<std::size_t> idx;
    auto visit = [&](const std::vector<KSet>& edges) {
        const Hypergraph h = make_hypergraph(8, 3, edges);
        ++hosts;
        for (const ExtensionPattern& p : pats) {
            bool found = false;
            enumerate_extension_embeddings(p, h, std::nullopt, [&](const CopyWitness&) {
                found = true;
                return false;
            });
            const bool oracle = count_copies_oracle(p.hypergraph(), h) > 0;
            if (found != oracle) FAIL_CHECK(p.name() << " on " << hosts);
            with_copy += found;
        }
    };
    // up to relabeling a host's edges can start at {0,1,2}
    std::vector<KSet> edges{KSet{0, 1, 2}};
    visit(edges);
    for (std::size_t a = 1; a < ksets.size(); ++a) {
        edges.resize(1);
        edges.push_back(ksets[a]);
        visit(edges);
        for (std::size_t b = a + 1; b < ksets.size(); ++b) {
            edges.resize(2);
            edges.push_back(ksets[b]);
            visit(edges);
            for (std::size_t c = b + 1; c < ksets.size(); ++c) {
                edges.resize(3);
                edges.push_back(ksets[c]);
                visit(edges);
            }
        }
    }
    CHECK(hosts == 1 + 55 + 55 * 54 / 2 + 55 * 54 * 53 / 6);
    CHECK(with_copy > 0);
}
