#include "hyperboot/repro.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hyperboot/diagnostics.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/oracle.hpp"
#include "hyperboot/process.hpp"
#include "hyperboot/rng.hpp"
#include "hyperboot/search.hpp"
#include "hyperboot/trace_io.hpp"

namespace hyperboot {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::fixed << s << "s";
    return ss.str();
}

ReproResult prop12(std::size_t k, std::size_t t, std::size_t n, std::size_t workers, const std::string& id) {
    ReproResult r;
    r.id = id;
    const ExtensionPattern p = extend(patterns::star(t - 1), k);
    const Hypergraph h0 = star_construction(k, t, n);
    const auto t0 = Clock::now();
    const Trace tr = run(p, h0, {0, workers});
    const double secs = seconds_since(t0);
    const std::string first = format_trace_jsonl(tr);
    const Trace again = run(p, h0, {0, workers});
    const bool same = format_trace_jsonl(again) == first;
    std::istringstream in(first);
    const bool reload = format_trace_jsonl(read_trace_jsonl(in, p)) == first;
    const std::size_t tau = tr.terminated() ? *tr.tau() : 0;
    r.passed = tr.terminated() && tau >= t - 1 && same && reload && secs < 60.0;
    r.lines.push_back("star construction k=" + std::to_string(k) + " t=" + std::to_string(t) + " n=" +
                      std::to_string(n) + ": tau=" + std::to_string(tau) + " (need >= " + std::to_string(t - 1) +
                      "), replay " + (same && reload ? "identical" : "differs") + ", " + fmt_seconds(secs) +
                      " (limit 60s)");
    return r;
}

ReproResult k4_baseline(std::size_t n, std::size_t workers, const std::string& id) {
    ReproResult r;
    r.id = id;
    const ExtensionPattern p = extend(patterns::clique(4), 2, "clique4");
    const auto t0 = Clock::now();
    const SearchResult res = exhaustive_max(2, n, p, workers);
    const double secs = seconds_since(t0);
    const bool replay = tau_of(p, res.witness) == res.best_tau;
    r.passed = res.best_tau == n - 3 && replay && secs < 600.0;
    r.lines.push_back("K4 exhaustive n=" + std::to_string(n) + ": M=" + std::to_string(res.best_tau) + " (expect " +
                      std::to_string(n - 3) + "), " + std::to_string(res.explored) + " classes, witness replay " +
                      (replay ? "ok" : "FAILED") + ", " + fmt_seconds(secs));
    return r;
}

ReproResult oracle_equivalence(std::size_t workers) {
    ReproResult r;
    r.id = "oracle-equivalence";
    const auto t0 = Clock::now();
    std::size_t compared = 0, mismatched = 0, skipped = 0;
    for (std::size_t k : {2, 3}) {
        const OracleCheckReport rep = oracle_check(k, 8, 200, 3 + k, workers);
        compared += rep.compared;
        skipped += rep.skipped;
        mismatched += rep.mismatches.size();
        for (const auto& m : rep.mismatches) r.lines.push_back("mismatch: " + m);
    }
    const double secs = seconds_since(t0);
    r.passed = mismatched == 0 && skipped == 0 && compared == 1600 && secs < 300.0;
    r.lines.push_back("frontier vs oracle: " + std::to_string(compared) + " instances, " + std::to_string(mismatched) +
                      " mismatches, " + std::to_string(skipped) + " skipped, " + fmt_seconds(secs) + " (limit 300s)");
    return r;
}

struct TraceCase {
    std::string label;
    ExtensionPattern pattern;
    Hypergraph start;
};

std::vector<TraceCase> trace_corpus() {
    std::vector<TraceCase> out;
    for (auto [k, t, n] : {std::array<std::size_t, 3>{3, 3, 20}, {3, 4, 30}, {3, 5, 24}})
        out.push_back({"star k=" + std::to_string(k) + " t=" + std::to_string(t), extend(patterns::star(t - 1), k),
                       star_construction(k, t, n)});
    std::size_t idx = 0;
    for (const char* name : {"edge", "path2", "star3", "triangle", "path3"})
        for (std::size_t k : {2, 3})
            for (std::size_t rep = 0; rep < 4; ++rep, ++idx) {
                Rng rng(derive_seed(4, idx));
                const std::size_t n = 6 + rng.below(k == 2 ? 5 : 4);
                const double prob = 0.05 + 0.3 * rng.uniform();
                out.push_back({std::string(name) + " k=" + std::to_string(k), make_pattern(name, k),
                               random_hypergraph(n, k, prob, rng.next())});
            }
    for (std::size_t rep = 0; rep < 6; ++rep) {
        Rng rng(derive_seed(44, rep));
        out.push_back({"clique4 k=2", extend(patterns::clique(4), 2, "clique4"),
                       random_hypergraph(6 + rng.below(4), 2, 0.2 + 0.2 * rng.uniform(), rng.next())});
    }
    return out;
}

/// Empty string when every invariant holds.
std::string trace_violation(const TraceCase& c, const Trace& tr, std::size_t workers) {
    if (!tr.terminated()) return "did not terminate";
    for (std::size_t m = 0; m < tr.steps().size(); ++m) {
        const Hypergraph a = tr.state_at(m), b = tr.state_at(m + 1);
        if (b.edge_count() <= a.edge_count()) return "edge count not increasing at step " + std::to_string(m + 1);
        for (const KSet& e : a.edges())
            if (!b.contains(e)) return "edge lost at step " + std::to_string(m + 1);
        const Frontier fr = frontier(c.pattern, a);
        if (fr.new_edges != tr.steps()[m].added) return "step " + std::to_string(m + 1) + " is not the frontier";
    }
    const auto [after, rec] = step(c.pattern, tr.final_state());
    if (!rec.added.empty() || !(after == tr.final_state())) return "final state is not a fixed point";
    const std::uint64_t room = binomial(tr.n(), tr.k()) - tr.initial().edge_count();
    if (*tr.tau() > room) return "tau exceeds C(n,k) - |E(H0)|";
    const std::string one = format_trace_jsonl(tr);
    const std::size_t other = workers > 1 ? 1 : 3;
    if (format_trace_jsonl(run(c.pattern, c.start, {0, other})) != one) return "trace depends on worker count";
    return {};
}

ReproResult process_invariants(std::size_t workers) {
    ReproResult r;
    r.id = "process-invariants";
    std::size_t violations = 0, traces = 0;
    for (const TraceCase& c : trace_corpus()) {
        const Trace tr = run(c.pattern, c.start, {0, workers});
        ++traces;
        const std::string bad = trace_violation(c, tr, workers);
        if (!bad.empty()) {
            ++violations;
            r.lines.push_back(c.label + ": " + bad);
        }
    }
    r.passed = violations == 0;
    r.lines.push_back(std::to_string(traces) + " traces, " + std::to_string(violations) + " violations");
    return r;
}

ReproResult observations(std::size_t workers) {
    ReproResult r;
    r.id = "observations";
    std::vector<TraceCase> golden;
    for (auto [k, t, n] : {std::array<std::size_t, 3>{3, 3, 20}, {3, 4, 30}, {3, 5, 40}, {4, 4, 40}})
        golden.push_back({"star k=" + std::to_string(k) + " t=" + std::to_string(t), extend(patterns::star(t - 1), k),
                          star_construction(k, t, n)});
    for (std::size_t rep = 0; rep < 6; ++rep) {
        Rng rng(derive_seed(5, rep));
        golden.push_back({"path2 k=3 n=20", make_pattern("path2", 3),
                          random_hypergraph(20, 3, 0.002 + 0.01 * rng.uniform(), rng.next())});
        golden.push_back({"star3 k=3 n=22", make_pattern("star3", 3),
                          random_hypergraph(22, 3, 0.002 + 0.006 * rng.uniform(), rng.next())});
    }
    std::size_t violations = 0, checked = 0;
    ObservationOptions opts;
    opts.samples = 100;
    for (const TraceCase& c : golden) {
        if (c.start.n() < 3 * c.pattern.vertex_count()) continue;
        const Trace tr = run(c.pattern, c.start, {0, workers});
        const ObservationReport rep = check_observations(tr, c.pattern, DiagnosticsConfig{}, opts);
        ++checked;
        std::string line = c.label + " tau=" + std::to_string(rep.tau) + ":";
        for (const char* name : {"degree", "window", "twice-essential"}) {
            const CheckResult* cr = rep.find(name);
            const bool pass = cr && cr->status == CheckStatus::Pass;
            if (!pass) ++violations;
            line += std::string(" ") + name + "=" + (cr ? to_string(cr->status) : "missing");
            if (cr && !cr->counterexample.empty()) line += " [" + cr->counterexample + "]";
        }
        r.lines.push_back(line);
    }
    r.passed = violations == 0 && checked == golden.size();
    r.lines.push_back(std::to_string(checked) + " golden traces, 100 samples per copy, " + std::to_string(violations) +
                      " violations");
    return r;
}

ReproResult constancy(std::size_t workers) {
    ReproResult r;
    r.id = "constancy";
    const ExtensionPattern star = extend(patterns::star(3), 3);
    std::vector<std::size_t> taus;
    for (std::size_t n : {25, 30, 35}) taus.push_back(tau_of(star, star_construction(3, 4, n), workers));
    const bool constant = std::all_of(taus.begin(), taus.end(), [&](std::size_t t) { return t == taus.front(); });
    r.lines.push_back("star construction k=3 t=4, n=25/30/35: tau=" + std::to_string(taus[0]) + "/" +
                      std::to_string(taus[1]) + "/" + std::to_string(taus[2]));

    const ExtensionPattern path2 = make_pattern("path2", 3);
    std::size_t worst = 0;
    for (std::size_t s = 0; s < 50; ++s) {
        const std::size_t n = std::array<std::size_t, 3>{12, 16, 20}[s % 3];
        Rng rng(derive_seed(6, s));
        const double prob = 0.005 + 0.045 * rng.uniform();
        worst = std::max(worst, tau_of(path2, random_hypergraph(n, 3, prob, rng.next()), workers));
    }
    r.lines.push_back("50 sparse path2 starts: max tau=" + std::to_string(worst) + " (cap " +
                      std::to_string(kSparsePath2TauCap) + ")");
    r.passed = constant && worst <= kSparsePath2TauCap;
    return r;
}

ReproResult dmatch_check() {
    ReproResult r;
    r.id = "dmatch";
    std::size_t mismatches = 0, total = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        Rng rng(derive_seed(7, i));
        const std::size_t k = 3 + i % 3;
        const std::size_t pool = (k - 2) + rng.below(7);  // vertices 2..pool+1
        const std::size_t want = 1 + rng.below(8);
        std::vector<KSet> edges;
        std::vector<std::vector<int>> link;
        std::vector<KSet> all;
        for_each_subset(pool, k - 2, [&](const KSet& idx) {
            std::vector<VertexId> u;
            for (VertexId v : idx) u.push_back(static_cast<VertexId>(v + 2));
            all.push_back(KSet::from_sorted(u));
            return true;
        });
        for (std::size_t j = all.size(); j > 1; --j) std::swap(all[j - 1], all[rng.below(j)]);
        all.resize(std::min(all.size(), want));
        for (const KSet& u : all) {
            edges.push_back(u.with(0).with(1));
            link.emplace_back(u.begin(), u.end());
        }
        const Hypergraph h = make_hypergraph(pool + 2, k, edges);
        ++total;
        const std::size_t got = d_match(h, KSet::pair(0, 1));
        const std::size_t want_val = brute_force_packing(link);
        if (got != want_val) {
            ++mismatches;
            r.lines.push_back("k=" + std::to_string(k) + " link size " + std::to_string(link.size()) + ": d_match=" +
                              std::to_string(got) + " brute force=" + std::to_string(want_val));
        }
    }
    r.passed = mismatches == 0;
    r.lines.push_back(std::to_string(total) + " random links (k=3,4,5, size <= 8), " + std::to_string(mismatches) +
                      " mismatches");
    return r;
}

ReproResult single_edge(std::size_t workers) {
    ReproResult r;
    r.id = "single-edge";
    std::size_t worst = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        Rng rng(derive_seed(8, i));
        const std::size_t k = 2 + i % 3;
        const std::size_t n = k + rng.below(10 - k);
        const Hypergraph h = random_hypergraph(n, k, rng.uniform(), rng.next());
        worst = std::max(worst, tau_of(extend(patterns::edge(), k), h, workers));
    }
    r.passed = worst <= 1;
    r.lines.push_back("100 random starts (k=2,3,4): max tau=" + std::to_string(worst) + " (bound 1)");
    return r;
}

using Runner = std::function<ReproResult(std::size_t)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> reg = {
        {"prop12-k3-t3", [](std::size_t w) { return prop12(3, 3, 20, w, "prop12-k3-t3"); }},
        {"prop12-k3-t4", [](std::size_t w) { return prop12(3, 4, 30, w, "prop12-k3-t4"); }},
        {"prop12-k3-t5", [](std::size_t w) { return prop12(3, 5, 40, w, "prop12-k3-t5"); }},
        {"prop12-k4-t4", [](std::size_t w) { return prop12(4, 4, 40, w, "prop12-k4-t4"); }},
        {"k4-baseline-n4", [](std::size_t w) { return k4_baseline(4, w, "k4-baseline-n4"); }},
        {"k4-baseline-n5", [](std::size_t w) { return k4_baseline(5, w, "k4-baseline-n5"); }},
        {"k4-baseline-n6", [](std::size_t w) { return k4_baseline(6, w, "k4-baseline-n6"); }},
        {"oracle-equivalence", oracle_equivalence},
        {"process-invariants", process_invariants},
        {"observations", observations},
        {"constancy", constancy},
        {"dmatch", [](std::size_t) { return dmatch_check(); }},
        {"single-edge", single_edge},
    };
    return reg;
}

}  // namespace

const std::vector<std::string>& repro_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [id, fn] : registry()) out.push_back(id);
        return out;
    }();
    return ids;
}

ReproResult run_repro(const std::string& id, std::size_t workers) {
    for (const auto& [name, fn] : registry())
        if (name == id) return fn(std::max<std::size_t>(1, workers));
    throw std::invalid_argument("unknown repro id '" + id + "'");
}

OracleCheckReport oracle_check(std::size_t k, std::size_t n_max, std::size_t instances, std::uint64_t seed,
                               std::size_t workers) {
    if (n_max > 8) throw std::invalid_argument("oracle check needs n_max <= 8");
    OracleCheckReport rep;
    std::size_t stream = 0;
    for (const char* name : {"edge", "path2", "star3", "triangle"}) {
        const ExtensionPattern p = make_pattern(name, k);
        for (std::size_t i = 0; i < instances; ++i, ++stream) {
            Rng rng(derive_seed(seed, stream));
            const std::size_t lo = k;
            const std::size_t n = lo + rng.below(std::max<std::size_t>(n_max, lo) - lo + 1);
            const double prob = 0.05 + 0.55 * rng.uniform();
            const Hypergraph h = random_hypergraph(n, k, prob, rng.next());
            std::vector<KSet> expect;
            try {
                expect = oracle_frontier(p.hypergraph(), h);
            } catch (const BudgetExceeded&) {
                ++rep.skipped;
                continue;
            }
            ++rep.compared;
            const Frontier got = frontier(p, h, workers);
            bool ok = got.new_edges == expect;
            for (std::size_t j = 0; ok && j < got.size(); ++j)
                ok = validate_witness(p, h, got.witnesses[j], got.new_edges[j]) && got.witnesses[j].uses(got.new_edges[j]);
            if (!ok)
                rep.mismatches.push_back(std::string(name) + " k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                         " instance " + std::to_string(i) + ": frontier " + std::to_string(got.size()) +
                                         " edges, oracle " + std::to_string(expect.size()));
        }
    }
    return rep;
}

std::size_t brute_force_packing(const std::vector<std::vector<int>>& sets) {
    const std::size_t m = sets.size();
    if (m > 20) throw std::invalid_argument("brute force packing limited to 20 sets");
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> seen;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (int v : sets[i]) {
                if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
                    ok = false;
                    break;
                }
                seen.push_back(v);
            }
        }
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
    }
    return best;
}

}  // namespace hyperboot
