#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperboot/process.hpp"
#include "hyperboot/rng.hpp"
#include "hyperboot/search.hpp"
#include "hyperboot/trace_io.hpp"

using namespace hyperboot;

namespace {

void check_invariants(const ExtensionPattern& p, const Trace& tr) {
    REQUIRE(tr.terminated());
    for (std::size_t m = 0; m < tr.steps().size(); ++m) {
        const Hypergraph a = tr.state_at(m), b = tr.state_at(m + 1);
        REQUIRE(b.edge_count() == a.edge_count() + tr.steps()[m].added.size());
        for (const KSet& e : a.edges()) REQUIRE(b.contains(e));
        REQUIRE_FALSE(tr.steps()[m].added.empty());
    }
    const auto [after, rec] = step(p, tr.final_state());
    REQUIRE(rec.added.empty());
    REQUIRE(after == tr.final_state());
    REQUIRE(*tr.tau() <= binomial(tr.n(), tr.k()) - tr.initial().edge_count());
}

}  // namespace

TEST_CASE("step examples") {
    const ExtensionPattern edge3 = extend(patterns::edge(), 3);
    const auto [full, rec] = step(edge3, Hypergraph(5, 3));
    CHECK(rec.added.size() == 10);
    CHECK(full.is_complete());

    const ExtensionPattern cherry = extend(patterns::star(2), 3);
    const Hypergraph k5 = complete_hypergraph(5, 3);
    const auto [same, none] = step(cherry, k5);
    CHECK(none.added.empty());
    CHECK(same == k5);

    const auto [next, three] = step(cherry, make_hypergraph(5, 3, std::vector<KSet>{{0, 1, 2}}));
    CHECK(three.added == std::vector<KSet>{{0, 3, 4}, {1, 3, 4}, {2, 3, 4}});
    CHECK(next.edge_count() == 4);
}

TEST_CASE("run and running_time examples") {
    const ExtensionPattern edge3 = extend(patterns::edge(), 3);
    const Trace t1 = run(edge3, Hypergraph(5, 3));
    CHECK(running_time(t1) == 1);
    const Trace t0 = run(edge3, complete_hypergraph(5, 3));
    CHECK(running_time(t0) == 0);
    CHECK(t0.steps().empty());

    // the star extension with one leaf is a single edge, so the slow start
    // needs the star with t-1 leaves
    const Trace slow = run(extend(patterns::star(2), 3), star_construction(3, 3, 20));
    CHECK(running_time(slow) >= 2);
    const Trace slow4 = run(extend(patterns::star(3), 3), star_construction(3, 4, 30));
    CHECK(running_time(slow4) >= 3);
    check_invariants(extend(patterns::star(3), 3), slow4);
}

TEST_CASE("max_steps stops early") {
    const Trace tr = run(extend(patterns::star(3), 3), star_construction(3, 4, 30), {1, 1});
    CHECK_FALSE(tr.terminated());
    CHECK_FALSE(tr.tau());
    CHECK(tr.steps().size() == 1);
    CHECK_THROWS_AS(running_time(tr), std::logic_error);
}

TEST_CASE("state_at across snapshot boundaries") {
    // a synthetic trace adding one edge per step
    const Hypergraph h0(7, 3);
    Trace tr("synthetic", h0);
    Hypergraph cur = h0;
    std::vector<KSet> order;
    for_each_subset(7, 3, [&](const KSet& s) {
        order.push_back(s);
        return true;
    });
    for (std::size_t m = 0; m < 20; ++m) {
        StepRecord rec;
        rec.index = m + 1;
        rec.added = {order[m]};
        rec.witnesses.push_back(CopyWitness{{order[m][0], order[m][1], order[m][2]}, {order[m]}});
        const std::vector<KSet> add{order[m]};
        cur = cur.with_edges(add);
        tr.append(rec, cur);
    }
    tr.mark_fixed_point();
    for (std::size_t m = 0; m <= 20; ++m) {
        const Hypergraph h = tr.state_at(m);
        REQUIRE(h.edge_count() == m);
        for (std::size_t i = 0; i < m; ++i) REQUIRE(h.contains(order[i]));
    }
    CHECK(tr.final_state() == cur);
    CHECK(*tr.tau() == 20);
    StepRecord more;
    more.added = {order[30]};
    CHECK_THROWS_AS(tr.append(more, cur), std::logic_error);
}

TEST_CASE("append rejects inconsistent states") {
    Trace tr("synthetic", Hypergraph(5, 3));
    StepRecord rec;
    rec.added = {KSet{0, 1, 2}};
    CHECK_THROWS_AS(tr.append(rec, Hypergraph(5, 3)), std::invalid_argument);
    CHECK_THROWS_AS(tr.append(StepRecord{}, Hypergraph(5, 3)), std::invalid_argument);
    const std::vector<KSet> one{KSet{0, 1, 3}};
    CHECK_THROWS_AS(tr.append(rec, Hypergraph(5, 3).with_edges(one)), std::invalid_argument);
}

TEST_CASE("invariants and determinism on random starts") {
    Rng rng(31);
    for (const char* name : {"edge", "path2", "star3", "triangle", "path3", "clique4"})
        for (std::size_t k : {2, 3})
            for (int rep = 0; rep < 5; ++rep) {
                const ExtensionPattern p = make_pattern(name, k);
                const std::size_t n = 6 + rng.below(k == 2 ? 6 : 4);
                const Hypergraph h0 = random_hypergraph(n, k, 0.05 + 0.3 * rng.uniform(), rng.next());
                const Trace tr = run(p, h0);
                check_invariants(p, tr);
                const std::string ser = format_trace_jsonl(tr);
                for (std::size_t w : {2, 4}) REQUIRE(format_trace_jsonl(run(p, h0, {0, w})) == ser);
                REQUIRE(format_trace_jsonl(run(p, h0)) == ser);
            }
}

TEST_CASE("single-edge pattern completes in at most one step") {
    Rng rng(32);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t k = 2 + rep % 3;
        const std::size_t n = k + rng.below(6);
        const Hypergraph h0 = random_hypergraph(n, k, rng.uniform(), rng.next());
        const Trace tr = run(extend(patterns::edge(), k), h0);
        REQUIRE(running_time(tr) <= 1);
        REQUIRE(tr.final_state().is_complete());
    }
}

TEST_CASE("recorded witnesses use their edges") {
    const ExtensionPattern p = extend(patterns::star(3), 3);
    const Trace tr = run(p, star_construction(3, 4, 25));
    for (std::size_t m = 0; m < tr.steps().size(); ++m) {
        const auto& rec = tr.steps()[m];
        REQUIRE(rec.witnesses.size() == rec.added.size());
        const Hypergraph before = tr.state_at(m);
        for (std::size_t i = 0; i < rec.added.size(); ++i) {
            REQUIRE(rec.witnesses[i].uses(rec.added[i]));
            REQUIRE(validate_witness(p, before, rec.witnesses[i], rec.added[i]));
        }
    }
}
