#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "hyperboot/diagnostics.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/matching.hpp"
#include "hyperboot/oracle.hpp"
#include "hyperboot/repro.hpp"
#include "hyperboot/rng.hpp"
#include "hyperboot/search.hpp"
#include "hyperboot/trace_io.hpp"

using namespace hyperboot;

namespace {

Hypergraph hg(std::size_t n, std::size_t k, std::vector<KSet> e) { return make_hypergraph(n, k, e); }

const ExtensionPattern& cherry() {
    static const ExtensionPattern p = extend(patterns::star(2), 3);
    return p;
}

std::vector<std::vector<int>> as_lists(std::span<const KSet> sets) {
    std::vector<std::vector<int>> out;
    for (const KSet& s : sets) out.emplace_back(s.begin(), s.end());
    return out;
}

// the same trace with the given steps only, claimed to be a fixed point
Trace truncated(const Trace& tr, std::size_t steps) {
    Trace out(tr.pattern_id(), tr.initial());
    for (std::size_t m = 0; m < steps; ++m) out.append(tr.steps()[m], tr.state_at(m + 1));
    out.mark_fixed_point();
    return out;
}

}  // namespace

TEST_CASE("d_match examples") {
    CHECK(d_match(hg(5, 3, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), KSet::pair(0, 1)) == 3);
    CHECK(d_match(hg(6, 4, {{0, 1, 2, 3}, {0, 1, 3, 4}, {0, 1, 4, 5}}), KSet::pair(0, 1)) == 2);
    CHECK(d_match(hg(6, 4, {{0, 1, 2, 3}}), KSet::pair(4, 5)) == 0);
    CHECK(d_match(hg(4, 2, {{0, 1}}), KSet::pair(0, 1)) == 1);
    CHECK(d_match(hg(4, 2, {{0, 1}}), KSet::pair(2, 3)) == 0);
}

TEST_CASE("d_match for k=3 counts completing vertices") {
    Rng rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        const Hypergraph h = random_hypergraph(9, 3, 0.3, rng.next());
        for (VertexId x = 0; x < 9; ++x)
            for (VertexId y = x + 1; y < 9; ++y) {
                std::size_t z_count = 0;
                for (VertexId z = 0; z < 9; ++z)
                    if (z != x && z != y && h.contains(KSet{x, y, z})) ++z_count;
                REQUIRE(d_match(h, KSet::pair(x, y)) == z_count);
            }
    }
}

TEST_CASE("d_match agrees with brute force on small links") {
    Rng rng(42);
    for (int rep = 0; rep < 120; ++rep) {
        const std::size_t k = 4 + rep % 2;
        const Hypergraph h = random_hypergraph(8, k, 0.1 + 0.2 * rng.uniform(), rng.next());
        for (VertexId x = 0; x < 3; ++x)
            for (VertexId y = x + 1; y < 8; ++y) {
                const auto link = h.link(x, y);
                if (link.size() > 12) continue;
                REQUIRE(d_match(h, KSet::pair(x, y)) == brute_force_packing(as_lists(link)));
            }
    }
}

TEST_CASE("packing helpers agree with brute force") {
    Rng rng(43);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t r = 2 + rng.below(3);
        std::vector<KSet> sets;
        const std::size_t m = 1 + rng.below(10);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<VertexId> v;
            while (v.size() < r) {
                const VertexId x = static_cast<VertexId>(rng.below(rep % 2 ? 10 : 70));
                if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
            }
            sets.push_back(KSet::from_unsorted(v));
        }
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        const std::size_t want = brute_force_packing(as_lists(sets));
        REQUIRE(max_packing(sets, 1'000'000) == want);
        REQUIRE(packing_number(sets, 100) == want);
        REQUIRE(packing_number(sets, 1) == std::min<std::size_t>(want, 1));
        for (std::size_t q = 0; q <= want + 1; ++q) REQUIRE(has_disjoint_sets(sets, q) == (q <= want));
    }
}

TEST_CASE("graph matching number") {
    CHECK(graph_matching_number(4, {{0, 1}, {1, 2}, {2, 3}}) == 2);
    CHECK(graph_matching_number(3, {{0, 1}, {1, 2}, {0, 2}}) == 1);
    CHECK(graph_matching_number(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}}) == 3);
    CHECK(graph_matching_number(5, {}) == 0);
}

TEST_CASE("brute_force_packing") {
    CHECK(brute_force_packing({}) == 0);
    CHECK(brute_force_packing({{2, 3}, {3, 4}, {4, 5}}) == 2);
    CHECK(brute_force_packing({{1}, {1}, {2}}) == 2);
}

TEST_CASE("center_family examples") {
    // leaves and sleeves are interchangeable, so the one copy has 4 centers
    const CenterFamily self = center_family(cherry(), cherry().hypergraph());
    CHECK(self.centers.size() == 4);
    for (const Center& c : self.centers) {
        CHECK(c.graph.vertices.size() == 3);
        CHECK(c.graph.pairs.size() == 2);
    }
    const CenterGraph identity{{0, 1, 2}, {KSet::pair(0, 1), KSet::pair(0, 2)}};
    CHECK(center_in_family(identity, self));
    CHECK(self.complete);

    const CenterFamily none = center_family(cherry(), hg(6, 3, {{0, 1, 2}, {0, 1, 3}}));
    CHECK(none.centers.empty());
    CHECK(none.pair_set.empty());

    const CenterFamily two = center_family(cherry(), hg(5, 3, {{0, 1, 2}, {2, 3, 4}}));
    CHECK(two.centers.size() == 4);
    CHECK(two.pair_set == std::vector<KSet>{KSet::pair(0, 2), KSet::pair(1, 2), KSet::pair(2, 3), KSet::pair(2, 4)});
}

TEST_CASE("pair set matches the pairs of enumerated centers") {
    Rng rng(44);
    for (const char* name : {"path2", "star3", "triangle"})
        for (int rep = 0; rep < 10; ++rep) {
            const ExtensionPattern p = make_pattern(name, 3);
            const Hypergraph h = random_hypergraph(9, 3, 0.05 + 0.15 * rng.uniform(), rng.next());
            // every copy, one witness per center map
            std::vector<KSet> want;
            enumerate_extension_embeddings(p, h, std::nullopt, [&](const CopyWitness& w) {
                for (const KSet& q : center_of(p, w).graph.pairs) want.push_back(q);
                return true;
            });
            std::sort(want.begin(), want.end());
            want.erase(std::unique(want.begin(), want.end()), want.end());
            REQUIRE(center_pair_set(p, h) == want);
            const CenterFamily fam = center_family(p, h);
            REQUIRE(fam.pair_set == want);
            for (const Center& c : fam.centers) REQUIRE(center_realizable(p, h, c.graph));
            // copies exist iff the subset oracle finds one
            REQUIRE(fam.centers.empty() == (count_copies_oracle(p.hypergraph(), h) == 0));
        }
}

TEST_CASE("good_vertices") {
    CHECK(good_vertices(CenterFamily{}, 2).empty());
    const std::vector<KSet> star{KSet::pair(0, 1), KSet::pair(0, 2), KSet::pair(0, 3), KSet::pair(0, 4)};
    CHECK(good_vertices(star, 3) == std::vector<VertexId>{0});
    CHECK(good_vertices(star, 1) == std::vector<VertexId>{0, 1, 2, 3, 4});
}

TEST_CASE("replace_vertex") {
    const CenterGraph path{{0, 1, 2}, {KSet::pair(0, 1), KSet::pair(1, 2)}};
    const CenterGraph moved = replace_vertex(path, 0, 5);
    CHECK(moved.vertices == std::vector<VertexId>{1, 2, 5});
    CHECK(moved.pairs == std::vector<KSet>{KSet::pair(1, 2), KSet::pair(1, 5)});
    const CenterGraph tri{{0, 1, 2}, {KSet::pair(0, 1), KSet::pair(0, 2), KSet::pair(1, 2)}};
    const CenterGraph t9 = replace_vertex(tri, 2, 9);
    CHECK(t9.vertices == std::vector<VertexId>{0, 1, 9});
    CHECK(t9.pairs == std::vector<KSet>{KSet::pair(0, 1), KSet::pair(0, 9), KSet::pair(1, 9)});
    CHECK_THROWS_AS(replace_vertex(tri, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(replace_vertex(tri, 7, 8), std::invalid_argument);
}

TEST_CASE("center_in_family") {
    const Hypergraph h = hg(8, 3, {{0, 1, 2}, {2, 3, 4}, {2, 5, 6}});
    const CenterFamily fam = center_family(cherry(), h);
    REQUIRE_FALSE(fam.centers.empty());
    CHECK(center_in_family(fam.centers.front().graph, fam));
    const CenterGraph outside{{20, 21, 22}, {KSet::pair(20, 21), KSet::pair(20, 22)}};
    CHECK_FALSE(center_in_family(outside, fam));
    // {0,2},{2,3} replaced 3 -> 5 is the copy through {2,5,6}
    const CenterGraph c{{0, 2, 3}, {KSet::pair(0, 2), KSet::pair(2, 3)}};
    REQUIRE(center_in_family(c, fam));
    const CenterGraph r = replace_vertex(c, 3, 5);
    CHECK(center_in_family(r, fam));
    CHECK(center_realizable(cherry(), h, r));
    // 7 is isolated, so no copy has it in its center
    const CenterGraph bad = replace_vertex(c, 3, 7);
    CHECK_FALSE(center_in_family(bad, fam));
    CHECK_FALSE(center_realizable(cherry(), h, bad));
}

TEST_CASE("classify_steps and essential_pairs") {
    const ExtensionPattern edge3 = extend(patterns::edge(), 3);
    const Trace one = run(edge3, Hypergraph(5, 3));
    CHECK(classify_steps(one, edge3) == std::vector<StepClass>{StepClass::Real});

    const Trace fixed = run(edge3, complete_hypergraph(5, 3));
    CHECK(classify_steps(fixed, edge3).empty());
    CHECK(essential_pairs(fixed, edge3).empty());

    const Trace star = run(cherry(), star_construction(3, 3, 20));
    const auto classes = classify_steps(star, cherry());
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == StepClass::Real);
    CHECK(classes[1] == StepClass::Fake);
    const auto ess = essential_pairs(star, cherry());
    REQUIRE(ess.size() == 1);
    CHECK(ess[0].m == 1);
    CHECK(ess[0].pair == KSet::pair(0, 3));
    CHECK(ess[0].dmatch_at_selection == 0);
}

TEST_CASE("one essential record per real step") {
    const ExtensionPattern p = extend(patterns::star(2), 3);
    const Trace tr = run(p, hg(12, 3, {{0, 1, 2}, {0, 3, 4}, {5, 6, 7}}));
    const auto classes = classify_steps(tr, p);
    const auto ess = essential_pairs(tr, p);
    REQUIRE(ess.size() == static_cast<std::size_t>(std::count(classes.begin(), classes.end(), StepClass::Real)));
    for (const EssentialRecord& r : ess) CHECK(classes[r.m - 1] == StepClass::Real);
}

TEST_CASE("essential records minimise d_match and recur at most twice") {
    Rng rng(45);
    for (const char* name : {"path2", "star3", "triangle"})
        for (int rep = 0; rep < 6; ++rep) {
            const ExtensionPattern p = make_pattern(name, 3);
            const Hypergraph h0 = random_hypergraph(10, 3, 0.01 + 0.04 * rng.uniform(), rng.next());
            const Trace tr = run(p, h0);
            const PairSetHistory hist = pair_set_history(tr, p);
            for (std::size_t m = 1; m < hist.pair_sets.size(); ++m)
                REQUIRE(std::includes(hist.pair_sets[m].begin(), hist.pair_sets[m].end(),
                                      hist.pair_sets[m - 1].begin(), hist.pair_sets[m - 1].end()));
            std::map<KSet, std::size_t> uses;
            for (const EssentialRecord& r : essential_pairs(tr, p, hist)) {
                const Hypergraph before = tr.state_at(r.m - 1);
                for (const KSet& q : center_of(p, r.copy).graph.pairs)
                    REQUIRE(d_match(before, q) >= r.dmatch_at_selection);
                REQUIRE(d_match(before, r.pair) == r.dmatch_at_selection);
                REQUIRE(validate_witness(p, tr.state_at(r.m), r.copy));
                ++uses[r.pair];
            }
            for (const auto& [q, count] : uses) REQUIRE(count <= 2);
        }
}

TEST_CASE("check_observations on golden traces") {
    const ExtensionPattern edge3 = extend(patterns::edge(), 3);
    const ObservationReport trivial = check_observations(run(edge3, Hypergraph(6, 3)), edge3, {});
    CHECK(trivial.ok());

    const ExtensionPattern star = extend(patterns::star(3), 3);
    const Trace tr = run(star, star_construction(3, 4, 30));
    const ObservationReport rep = check_observations(tr, star, {});
    CHECK(rep.ok());
    CHECK(rep.find("degree")->status == CheckStatus::Pass);
    CHECK(rep.find("window")->status == CheckStatus::Pass);
    CHECK(rep.find("twice-essential")->status == CheckStatus::Pass);
    CHECK(rep.tau == 3);
    const std::string text = format_report(rep);
    CHECK(text.find("\"check\":\"degree\"") != std::string::npos);

    const Trace cut = truncated(tr, 1);
    const ObservationReport bad = check_observations(cut, star, {});
    CHECK_FALSE(bad.ok());
    REQUIRE(bad.find("degree"));
    CHECK(bad.find("degree")->status == CheckStatus::Fail);
    CHECK_FALSE(bad.find("degree")->counterexample.empty());

    Trace open(tr.pattern_id(), tr.initial());
    CHECK_THROWS_AS(check_observations(open, star, {}), std::logic_error);
}

TEST_CASE("small hosts are not applicable") {
    const ExtensionPattern p = extend(patterns::star(2), 3);
    const Trace tr = run(p, hg(8, 3, {{0, 1, 2}}));
    const ObservationReport rep = check_observations(tr, p, {});
    CHECK(rep.find("degree")->status == CheckStatus::NotApplicable);
    CHECK(rep.find("window")->status == CheckStatus::NotApplicable);
    CHECK(rep.ok());
    DiagnosticsConfig low;
    low.n0 = 8;
    const ObservationReport forced = check_observations(tr, p, low);
    CHECK(forced.find("degree")->status != CheckStatus::NotApplicable);
}

TEST_CASE("config parsing") {
    const DiagnosticsConfig d = parse_config("");
    CHECK(d.ell == 4);
    CHECK(d.gamma == 16);
    const DiagnosticsConfig c = parse_config("# constants\nell = 2\nc=5 # inline\n\ns = 7\ngamma = 30\n");
    CHECK(c.ell == 2);
    CHECK(c.c == 5);
    CHECK(c.s == 7);
    CHECK(c.gamma2 == 10);
    CHECK(c.gamma == 30);
    CHECK(c.n0 == 0);
    CHECK(parse_config("n0 = 12\n").n0 == 12);
    CHECK_THROWS_AS(parse_config("banana = 3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("ell = x\n"), ParseError);
    CHECK_THROWS_AS(parse_config("ell 3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("ell = 7\n"), std::invalid_argument);
    DiagnosticsConfig off;
    off.gamma1 = off.gamma;
    CHECK_THROWS_AS(off.validate(), std::invalid_argument);
}

TEST_CASE("trace JSONL round trip") {
    Rng rng(46);
    for (const char* name : {"path2", "star3", "triangle"})
        for (int rep = 0; rep < 5; ++rep) {
            const ExtensionPattern p = make_pattern(name, 3);
            const Trace tr = run(p, random_hypergraph(9, 3, 0.02 + 0.05 * rng.uniform(), rng.next()));
            const std::string text = format_trace_jsonl(tr);
            std::istringstream in(text);
            const Trace back = read_trace_jsonl(in, p);
            REQUIRE(format_trace_jsonl(back) == text);
            // witnesses are recomputed when omitted
            std::istringstream bare(format_trace_jsonl(tr, false));
            REQUIRE(format_trace_jsonl(read_trace_jsonl(bare, p)) == text);
        }
    const ExtensionPattern p = make_pattern("star3", 3);
    const Trace tr = run(p, star_construction(3, 4, 25));
    std::ostringstream csv;
    write_trace_csv(csv, tr);
    CHECK(csv.str().rfind("step,edges_added,cumulative_edges\n0,0,", 0) == 0);
}

TEST_CASE("trace validation errors") {
    const ExtensionPattern p = make_pattern("path2", 3);
    const Trace tr = run(p, hg(7, 3, {{0, 1, 2}}));
    const std::string text = format_trace_jsonl(tr);
    auto parse = [&](const std::string& s) {
        std::istringstream in(s);
        return read_trace_jsonl(in, p);
    };
    CHECK_NOTHROW(parse(text));
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("{\"format\":\"other\"}\n"), ParseError);
    const std::string header = text.substr(0, text.find('\n') + 1);
    CHECK_THROWS_AS(parse(header), ParseError);  // no end record
    CHECK_THROWS_AS(parse(header + "{\"step\":1,\"added\":[[0,1,2]]}\n"), ParseError);  // already present
    CHECK_THROWS_AS(parse(header + "{\"step\":2,\"added\":[[0,1,3]]}\n"), ParseError);  // out of order
    CHECK_THROWS_AS(parse(header + "{\"step\":1,\"added\":[[4,5,6]]}\n"), ParseError);  // no copy
    CHECK_THROWS_AS(parse(header + "not json\n"), ParseError);
    CHECK_THROWS_AS(parse(text.substr(0, text.rfind('{'))), ParseError);
    CHECK_THROWS_AS(read_trace_jsonl(*std::make_unique<std::istringstream>(text), make_pattern("path2", 4)),
                    ParseError);
}
