#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hyperboot/canonical.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/hg_io.hpp"
#include "hyperboot/hypergraph.hpp"
#include "hyperboot/kset.hpp"
#include "hyperboot/rng.hpp"
#include "hyperboot/search.hpp"

using namespace hyperboot;

namespace {

std::vector<KSet> all_ksets(std::size_t n, std::size_t k) {
    std::vector<KSet> out;
    for_each_subset(n, k, [&](const KSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

Hypergraph from_mask(std::size_t n, std::size_t k, const std::vector<KSet>& all, std::uint64_t mask) {
    std::vector<KSet> e;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) e.push_back(all[i]);
    return make_hypergraph(n, k, e);
}

Hypergraph permuted(const Hypergraph& h, const std::vector<VertexId>& perm) {
    std::vector<KSet> e;
    for (const KSet& s : h.edges()) {
        std::vector<VertexId> v;
        for (VertexId x : s) v.push_back(perm[x]);
        e.push_back(KSet::from_unsorted(v));
    }
    return make_hypergraph(h.n(), h.k(), e);
}

// Orbit id of every labeled k-graph on n vertices, by applying all n! permutations.
std::vector<std::size_t> orbit_ids(std::size_t n, std::size_t k) {
    const auto all = all_ksets(n, k);
    std::map<KSet, std::size_t> pos;
    for (std::size_t i = 0; i < all.size(); ++i) pos[all[i]] = i;
    std::vector<std::vector<std::size_t>> images;  // permutation -> index map
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::size_t> img(all.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            std::vector<VertexId> v;
            for (VertexId x : all[i]) v.push_back(perm[x]);
            img[i] = pos[KSet::from_unsorted(v)];
        }
        images.push_back(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::uint64_t total = 1ULL << all.size();
    std::vector<std::size_t> id(total, SIZE_MAX);
    std::size_t next = 0;
    for (std::uint64_t m = 0; m < total; ++m) {
        if (id[m] != SIZE_MAX) continue;
        for (const auto& img : images) {
            std::uint64_t t = 0;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (m >> i & 1) t |= 1ULL << img[i];
            id[t] = next;
        }
        ++next;
    }
    return id;
}

}  // namespace

TEST_CASE("kset basics") {
    const KSet a{3, 1, 2};
    CHECK(a.size() == 3);
    CHECK(a[0] == 1);
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(0));
    CHECK(a.with(0) == KSet{0, 1, 2, 3});
    CHECK(a.without(2) == KSet::pair(1, 3));
    CHECK(a.disjoint(KSet{4, 5}));
    CHECK(KSet::pair(1, 2).subset_of(a));
    CHECK_THROWS_AS(KSet({1, 1, 2}), std::invalid_argument);
    std::vector<VertexId> big(kMaxUniformity + 1);
    std::iota(big.begin(), big.end(), 0);
    CHECK_THROWS_AS(KSet::from_sorted(big), std::invalid_argument);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(5, 7) == 0);
}

TEST_CASE("make_hypergraph examples") {
    const Hypergraph h = make_hypergraph(3, 3, std::vector<KSet>{{0, 1, 2}});
    CHECK(h.edge_count() == 1);
    const Hypergraph d = make_hypergraph(5, 3, std::vector<KSet>{{0, 1, 2}, {0, 1, 2}});
    CHECK(d.edge_count() == 1);
    CHECK_THROWS(make_hypergraph(4, 3, std::vector<KSet>{{0, 1, 2, 3}}));
    CHECK_THROWS(make_hypergraph(4, 3, std::vector<KSet>{{0, 1, 4}}));
    CHECK_THROWS(make_hypergraph(2, 3, std::vector<KSet>{}));
}

TEST_CASE("complete_hypergraph sizes") {
    CHECK(complete_hypergraph(4, 3).edge_count() == 4);
    CHECK(complete_hypergraph(5, 2).edge_count() == 10);
    CHECK(complete_hypergraph(6, 3).edge_count() == 20);
    CHECK(complete_hypergraph(6, 3).is_complete());
    CHECK(absent_ksets(complete_hypergraph(6, 3)).empty());
}

TEST_CASE("edge set agrees with a sorted-list model over 10000 operations") {
    const std::size_t n = 9, k = 3;
    const auto all = all_ksets(n, k);
    Rng rng(11);
    Hypergraph h(n, k);
    std::set<KSet> model;
    for (int op = 0; op < 10000; ++op) {
        const KSet e = all[rng.below(all.size())];
        switch (rng.below(3)) {
            case 0: {
                const std::vector<KSet> add{e};
                h = h.with_edges(add);
                model.insert(e);
                break;
            }
            case 1:
                REQUIRE(h.contains(e) == (model.count(e) == 1));
                break;
            default: {
                const auto got = h.edges();
                REQUIRE(std::vector<KSet>(model.begin(), model.end()) == got);
                // link index: the sets completing one random pair
                const VertexId x = static_cast<VertexId>(rng.below(n - 1));
                const VertexId y = static_cast<VertexId>(x + 1 + rng.below(n - 1 - x));
                std::vector<KSet> want;
                for (const KSet& f : model)
                    if (f.contains(x) && f.contains(y)) want.push_back(f.without(x).without(y));
                const auto link = h.link(x, y);
                std::vector<KSet> have(link.begin(), link.end());
                std::sort(have.begin(), have.end());
                REQUIRE(have == want);
            }
        }
        if (model.size() == all.size()) {
            h = Hypergraph(n, k);
            model.clear();
        }
    }
    CHECK(h.edge_count() == model.size());
}

TEST_CASE("canonical_code examples") {
    const Hypergraph a = make_hypergraph(4, 3, std::vector<KSet>{{0, 1, 2}});
    const Hypergraph b = make_hypergraph(4, 3, std::vector<KSet>{{1, 2, 3}});
    CHECK(canonical_code(a) == canonical_code(b));
    const Hypergraph c = make_hypergraph(4, 3, std::vector<KSet>{{0, 1, 2}, {0, 1, 3}});
    CHECK(canonical_code(a) != canonical_code(c));
}

TEST_CASE("16 labeled 3-graphs on 4 vertices give 5 codes") {
    const auto all = all_ksets(4, 3);
    std::set<std::string> codes;
    for (std::uint64_t m = 0; m < 16; ++m) codes.insert(canonical_code(from_mask(4, 3, all, m)));
    CHECK(codes.size() == 5);
}

TEST_CASE("canonical_code is invariant under random relabeling") {
    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 5 + rng.below(4);
        const std::size_t k = 2 + rng.below(2);
        const Hypergraph h = random_hypergraph(n, k, 0.4, rng.next());
        const std::string code = canonical_code(h);
        for (int p = 0; p < 20; ++p) {
            std::vector<VertexId> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            REQUIRE(canonical_code(permuted(h, perm)) == code);
        }
    }
}

TEST_CASE("canonical_code separates exactly the orbits of small 3-graphs") {
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto all = all_ksets(n, 3);
        const auto orbit = orbit_ids(n, 3);
        std::map<std::string, std::size_t> code_orbit;
        std::set<std::size_t> orbits;
        for (std::uint64_t m = 0; m < orbit.size(); ++m) {
            const std::string code = canonical_code(from_mask(n, 3, all, m));
            orbits.insert(orbit[m]);
            const auto [it, fresh] = code_orbit.emplace(code, orbit[m]);
            REQUIRE(it->second == orbit[m]);
        }
        CHECK(code_orbit.size() == orbits.size());
        // unlabeled 3-graphs on n vertices: 2, 5, 34
        CHECK(orbits.size() == std::map<std::size_t, std::size_t>{{3, 2}, {4, 5}, {5, 34}}.at(n));
    }
}

TEST_CASE("isomorphic_by_permutation agrees with codes") {
    Rng rng(9);
    for (int rep = 0; rep < 40; ++rep) {
        const Hypergraph a = random_hypergraph(5, 3, 0.5, rng.next());
        const Hypergraph b = random_hypergraph(5, 3, 0.5, rng.next());
        CHECK(isomorphic_by_permutation(a, b) == (canonical_code(a) == canonical_code(b)));
    }
}

TEST_CASE("HG1 round trip on 100 random instances") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const std::size_t k = 2 + rng.below(3);
        const std::size_t n = k + rng.below(8);
        const Hypergraph h = random_hypergraph(n, k, rng.uniform(), rng.next());
        const std::string text = format_hg1(h);
        const Hypergraph back = parse_hg1(text);
        REQUIRE(back == h);
        REQUIRE(format_hg1(back) == text);
    }
}

TEST_CASE("HG1 parse errors") {
    CHECK(parse_hg1("# comment\n3 4 1\n0 1 2\n").edge_count() == 1);
    CHECK_THROWS_AS(parse_hg1("3 4 2\n0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_hg1("3 4 1\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_hg1("3 4 1\n0 1 7\n"), ParseError);
    CHECK_THROWS_AS(parse_hg1("3 4 1\n2 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_hg1("x y z\n"), ParseError);
    CHECK_THROWS_AS(parse_hg1(""), ParseError);
}
