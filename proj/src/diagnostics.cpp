#include "hyperboot/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hyperboot/errors.hpp"
#include "hyperboot/matching.hpp"
#include "hyperboot/rng.hpp"

namespace hyperboot {

Center center_of(const ExtensionPattern& p, const CopyWitness& w) {
    Center c;
    const auto cm = w.center_map(p.center_size());
    c.graph.vertices.assign(cm.begin(), cm.end());
    std::sort(c.graph.vertices.begin(), c.graph.vertices.end());
    c.graph.pairs = w.center_pairs(p);
    c.source = w;
    return c;
}

std::vector<KSet> center_pair_set(const ExtensionPattern& p, const Hypergraph& h, SearchBudget budget) {
    const CopyFinder finder(p, h);
    std::vector<KSet> out;
    for (std::size_t x = 0; x < h.n(); ++x)
        for (VertexId y : h.neighbours(static_cast<VertexId>(x))) {
            if (y <= x) continue;
            const KSet q = KSet::pair(static_cast<VertexId>(x), y);
            if (finder.least_through_pair(q, budget)) out.push_back(q);
        }
    return out;
}

CenterFamily center_family(const ExtensionPattern& p, const Hypergraph& h, std::uint64_t witness_budget,
                           std::size_t step) {
    CenterFamily fam;
    fam.step = step;
    std::map<CenterGraph, CopyWitness> seen;
    std::uint64_t visited = 0;
    CopyFinder(p, h).for_each(
        std::nullopt,
        [&](const CopyWitness& w) {
            if (visited >= witness_budget) {
                fam.complete = false;
                return false;
            }
            ++visited;
            Center c = center_of(p, w);
            seen.emplace(std::move(c.graph), w);
            return true;
        },
        {}, true);
    for (auto& [g, w] : seen) fam.centers.push_back(Center{g, w});
    fam.pair_set = center_pair_set(p, h);
    return fam;
}

std::size_t d_match(const Hypergraph& h, const KSet& pair) {
    if (pair.size() != 2) throw std::invalid_argument("d_match expects a vertex pair");
    if (pair.back() >= h.n()) return 0;
    const auto link = h.link(pair[0], pair[1]);
    if (link.empty()) return 0;
    switch (h.k()) {
        case 2:
            return 1;
        case 3:
            return link.size();
        case 4: {
            std::map<VertexId, std::size_t> id;
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const KSet& u : link) {
                const std::size_t a = id.emplace(u[0], id.size()).first->second;
                const std::size_t b = id.emplace(u[1], id.size()).first->second;
                edges.emplace_back(a, b);
            }
            return graph_matching_number(id.size(), edges);
        }
        default:
            if (link.size() > kDMatchMaxLink)
                throw BudgetExceeded("link of " + pair.to_string() + " too large for exact d_match");
            return max_packing(std::vector<KSet>(link.begin(), link.end()), 10'000'000);
    }
}

std::string to_string(StepClass c) {
    switch (c) {
        case StepClass::Real:
            return "real";
        case StepClass::Fake:
            return "fake";
        default:
            return "unknown";
    }
}

PairSetHistory pair_set_history(const Trace& tr, const ExtensionPattern& p, SearchBudget budget) {
    PairSetHistory hist;
    std::vector<KSet> prev;
    for (std::size_t m = 0; m <= tr.steps().size(); ++m) {
        const Hypergraph h = tr.state_at(m);
        const CopyFinder finder(p, h);
        std::vector<KSet> cur = prev;  // pair sets only grow
        bool unknown = false;
        for (std::size_t x = 0; x < h.n(); ++x)
            for (VertexId y : h.neighbours(static_cast<VertexId>(x))) {
                if (y <= x) continue;
                const KSet q = KSet::pair(static_cast<VertexId>(x), y);
                if (std::binary_search(prev.begin(), prev.end(), q)) continue;
                try {
                    if (finder.least_through_pair(q, budget)) cur.push_back(q);
                } catch (const BudgetExceeded&) {
                    unknown = true;
                }
            }
        std::sort(cur.begin(), cur.end());
        hist.pair_sets.push_back(cur);
        hist.unknown.push_back(unknown);
        prev = std::move(cur);
    }
    return hist;
}

std::vector<StepClass> classify_steps(const PairSetHistory& hist) {
    std::vector<StepClass> out;
    for (std::size_t m = 1; m < hist.pair_sets.size(); ++m) {
        if (hist.pair_sets[m].size() > hist.pair_sets[m - 1].size())
            out.push_back(StepClass::Real);
        else if (hist.unknown[m] || hist.unknown[m - 1])
            out.push_back(StepClass::Unknown);
        else
            out.push_back(StepClass::Fake);
    }
    return out;
}

std::vector<StepClass> classify_steps(const Trace& tr, const ExtensionPattern& p, SearchBudget budget) {
    return classify_steps(pair_set_history(tr, p, budget));
}

std::vector<EssentialRecord> essential_pairs(const Trace& tr, const ExtensionPattern& p, const PairSetHistory& hist,
                                             SearchBudget budget) {
    std::vector<EssentialRecord> out;
    for (std::size_t m = 1; m < hist.pair_sets.size(); ++m) {
        const auto& before = hist.pair_sets[m - 1];
        const auto& now = hist.pair_sets[m];
        std::vector<KSet> fresh;
        std::set_difference(now.begin(), now.end(), before.begin(), before.end(), std::back_inserter(fresh));
        if (fresh.empty()) continue;

        const Hypergraph hm = tr.state_at(m);
        const CopyFinder finder(p, hm);
        std::optional<CopyWitness> best;
        for (const KSet& q : fresh) {
            auto w = finder.least_through_pair(q, budget);
            if (w && (!best || *w < *best)) best = std::move(w);
        }
        if (!best) throw std::logic_error("new center pair without a witnessing copy");

        const Hypergraph prev = tr.state_at(m - 1);
        EssentialRecord rec;
        rec.m = m;
        rec.copy = *best;
        bool first = true;
        for (const KSet& q : best->center_pairs(p)) {  // ascending, so ties keep the smaller pair
            const std::size_t d = d_match(prev, q);
            if (first || d < rec.dmatch_at_selection) {
                rec.pair = q;
                rec.dmatch_at_selection = d;
                first = false;
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<EssentialRecord> essential_pairs(const Trace& tr, const ExtensionPattern& p, SearchBudget budget) {
    return essential_pairs(tr, p, pair_set_history(tr, p, budget), budget);
}

std::vector<VertexId> good_vertices(const std::vector<KSet>& pair_set, std::size_t c) {
    std::map<VertexId, std::size_t> partners;
    for (const KSet& q : pair_set) {
        ++partners[q[0]];
        ++partners[q[1]];
    }
    std::vector<VertexId> out;
    for (auto [v, cnt] : partners)
        if (cnt >= c) out.push_back(v);
    return out;
}

std::vector<VertexId> good_vertices(const CenterFamily& fam, std::size_t c) { return good_vertices(fam.pair_set, c); }

CenterGraph replace_vertex(const CenterGraph& c, VertexId x, VertexId y) {
    const bool has_x = std::find(c.vertices.begin(), c.vertices.end(), x) != c.vertices.end();
    const bool has_y = std::find(c.vertices.begin(), c.vertices.end(), y) != c.vertices.end();
    if (!has_x) throw std::invalid_argument("replace_vertex: " + std::to_string(x) + " is not a center vertex");
    if (has_y) throw std::invalid_argument("replace_vertex: " + std::to_string(y) + " is already a center vertex");
    CenterGraph out;
    for (VertexId v : c.vertices) out.vertices.push_back(v == x ? y : v);
    std::sort(out.vertices.begin(), out.vertices.end());
    for (const KSet& q : c.pairs) {
        if (!q.contains(x)) {
            out.pairs.push_back(q);
            continue;
        }
        out.pairs.push_back(KSet::pair(std::min(y, q[0] == x ? q[1] : q[0]), std::max(y, q[0] == x ? q[1] : q[0])));
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

bool center_in_family(const CenterGraph& c, const CenterFamily& fam) {
    auto it = std::lower_bound(fam.centers.begin(), fam.centers.end(), c,
                               [](const Center& a, const CenterGraph& b) { return a.graph < b; });
    return it != fam.centers.end() && it->graph == c;
}

bool center_realizable(const ExtensionPattern& p, const Hypergraph& h, const CenterGraph& c, SearchBudget budget) {
    const auto& g = p.graph();
    if (c.vertices.size() != g.vertex_count() || c.pairs.size() != g.edge_count()) return false;
    for (VertexId v : c.vertices)
        if (v >= h.n()) return false;
    const CopyFinder finder(p, h);
    std::vector<VertexId> perm = c.vertices;
    do {
        std::vector<KSet> img;
        for (const auto& [u, v] : g.pairs()) img.push_back(KSet::pair(std::min(perm[u], perm[v]), std::max(perm[u], perm[v])));
        std::sort(img.begin(), img.end());
        if (img == c.pairs && finder.with_center_map(perm, budget)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

void DiagnosticsConfig::validate() const {
    if (!(0 < ell && ell < c && c < s && s < gamma2 && gamma2 < gamma1 && gamma1 < gamma))
        throw std::invalid_argument("config must satisfy 0 < ell < c < s < gamma2 < gamma1 < gamma");
}

DiagnosticsConfig parse_config(const std::string& text) {
    DiagnosticsConfig cfg;
    const std::map<std::string, std::size_t DiagnosticsConfig::*> keys = {
        {"ell", &DiagnosticsConfig::ell},       {"c", &DiagnosticsConfig::c},
        {"s", &DiagnosticsConfig::s},           {"gamma2", &DiagnosticsConfig::gamma2},
        {"gamma1", &DiagnosticsConfig::gamma1}, {"gamma", &DiagnosticsConfig::gamma},
        {"n0", &DiagnosticsConfig::n0},
    };
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = keys.find(key);
        if (it == keys.end()) throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
            throw ParseError("config line " + std::to_string(lineno) + ": '" + value + "' is not a count");
        cfg.*(it->second) = v;
    }
    cfg.validate();
    return cfg;
}

DiagnosticsConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass:
            return "pass";
        case CheckStatus::Fail:
            return "fail";
        case CheckStatus::NotApplicable:
            return "not-applicable";
        default:
            return "info";
    }
}

bool ObservationReport::ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

const CheckResult* ObservationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::string format_map(std::span<const VertexId> vs) {
    std::string s = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s + "]";
}

/// Fails at the first sampled (k-2)-set w with u w v missing from `next`.
bool degree_check_copy(const ExtensionPattern& p, const CopyWitness& w, const Hypergraph& next, std::size_t samples,
                       Rng& rng, std::size_t m, std::uint64_t& checked, std::string& counterexample) {
    const std::size_t k = next.k();
    std::vector<std::uint8_t> in_copy(next.n(), 0);
    for (VertexId v : w.vertex_map) in_copy[v] = 1;
    std::vector<VertexId> pool;
    for (std::size_t v = 0; v < next.n(); ++v)
        if (!in_copy[v]) pool.push_back(static_cast<VertexId>(v));
    if (pool.size() < k - 2) return true;
    for (const KSet& uv : w.center_pairs(p)) {
        for (std::size_t s = 0; s < samples; ++s) {
            for (std::size_t i = 0; i < k - 2; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
            const KSet wset = KSet::from_unsorted(std::span<const VertexId>(pool.data(), k - 2));
            const KSet e = wset.unite(uv);
            ++checked;
            if (!next.contains(e)) {
                counterexample = "step " + std::to_string(m) + " copy " + format_map(w.vertex_map) + " pair " +
                                 uv.to_string() + " w " + wset.to_string() + ": edge " + e.to_string() +
                                 " missing from H_" + std::to_string(m + 1);
                return false;
            }
        }
    }
    return true;
}

}  // namespace

ObservationReport check_observations(const Trace& tr, const ExtensionPattern& p, const DiagnosticsConfig& cfg,
                                     const ObservationOptions& opts) {
    if (!tr.terminated()) throw std::logic_error("observations need a terminated trace");
    cfg.validate();
    ObservationReport rep;
    rep.n = tr.n();
    rep.tau = *tr.tau();
    const PairSetHistory hist = pair_set_history(tr, p, opts.budget);
    rep.classes = classify_steps(hist);
    rep.essential = essential_pairs(tr, p, hist, opts.budget);
    const std::size_t n0 = cfg.n0 ? cfg.n0 : 3 * p.vertex_count();
    const bool large = tr.n() >= n0;
    const std::string small_n = "n = " + std::to_string(tr.n()) + " < n0 = " + std::to_string(n0);

    CheckResult degree;
    degree.name = "degree";
    if (!large) {
        degree.status = CheckStatus::NotApplicable;
        degree.detail = small_n;
    } else {
        std::uint64_t checked = 0;
        std::size_t copies = 0;
        bool ok = true;
        for (std::size_t m = 0; m <= rep.tau && ok; ++m) {
            Rng rng(derive_seed(opts.seed, m));
            const Hypergraph next = tr.state_at(m + 1);
            std::vector<CopyWitness> ws;
            if (m == 0) {
                CopyFinder(p, tr.initial()).for_each(
                    std::nullopt,
                    [&](const CopyWitness& w) {
                        ws.push_back(w);
                        return ws.size() < opts.initial_copies;
                    },
                    opts.budget, true);
            }
            const std::vector<CopyWitness>& list = m == 0 ? ws : tr.steps()[m - 1].witnesses;
            for (const CopyWitness& w : list) {
                ++copies;
                if (!degree_check_copy(p, w, next, opts.samples, rng, m, checked, degree.counterexample)) {
                    ok = false;
                    break;
                }
            }
        }
        degree.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        degree.detail = std::to_string(copies) + " copies, " + std::to_string(checked) + " sampled edges";
    }
    rep.checks.push_back(degree);

    CheckResult window;
    window.name = "window";
    if (!large) {
        window.status = CheckStatus::NotApplicable;
        window.detail = small_n;
    } else {
        std::size_t undecided = 0;
        for (std::size_t m = 3; m <= rep.tau; ++m) {
            const StepClass a = rep.classes[m - 3], b = rep.classes[m - 2], c = rep.classes[m - 1];
            if (a == StepClass::Real || b == StepClass::Real || c == StepClass::Real) continue;
            if (a == StepClass::Unknown || b == StepClass::Unknown || c == StepClass::Unknown) {
                ++undecided;
                continue;
            }
            window.status = CheckStatus::Fail;
            window.counterexample = "steps " + std::to_string(m - 2) + ".." + std::to_string(m) + " are all fake";
            break;
        }
        const std::size_t real = static_cast<std::size_t>(std::count(rep.classes.begin(), rep.classes.end(), StepClass::Real));
        window.detail = std::to_string(real) + " real of " + std::to_string(rep.tau) + " steps";
        if (undecided) window.detail += ", " + std::to_string(undecided) + " windows undecided";
    }
    rep.checks.push_back(window);

    CheckResult twice;
    twice.name = "twice-essential";
    std::map<KSet, std::vector<std::size_t>> uses;
    for (const auto& r : rep.essential) uses[r.pair].push_back(r.m);
    std::size_t most = 0;
    for (const auto& [q, ms] : uses) {
        most = std::max(most, ms.size());
        if (ms.size() > 2 && twice.status != CheckStatus::Fail) {
            twice.status = CheckStatus::Fail;
            twice.counterexample = "pair " + q.to_string() + " essential at " + std::to_string(ms.size()) + " steps";
        }
    }
    twice.detail = std::to_string(rep.essential.size()) + " essential records, at most " + std::to_string(most) +
                   " per pair";
    rep.checks.push_back(twice);

    CheckResult bound;
    bound.name = "c3-bound";
    std::map<VertexId, std::set<KSet>> at;
    for (const auto& r : rep.essential) {
        at[r.pair[0]].insert(r.pair);
        at[r.pair[1]].insert(r.pair);
    }
    const std::size_t cap = cfg.c * cfg.c * cfg.c;
    std::size_t worst = 0;
    for (const auto& [v, ps] : at) {
        if (ps.size() > worst) worst = ps.size();
        if (ps.size() > cap && bound.counterexample.empty())
            bound.counterexample = "vertex " + std::to_string(v) + " lies in " + std::to_string(ps.size()) +
                                   " essential pairs";
    }
    bound.detail = "max " + std::to_string(worst) + " essential pairs per vertex, c^3 = " + std::to_string(cap);
    if (worst > cap) {
        bound.status = CheckStatus::Informational;
        bound.detail += ", outside proven regime";
    }
    rep.checks.push_back(bound);
    return rep;
}

std::string format_report(const ObservationReport& r) {
    std::ostringstream out;
    out << "n = " << r.n << ", tau = " << r.tau << "\n";
    out << "steps:";
    for (std::size_t m = 0; m < r.classes.size(); ++m) out << " " << (m + 1) << ":" << to_string(r.classes[m]);
    out << "\n";
    for (const auto& e : r.essential)
        out << "essential m=" << e.m << " pair=" << e.pair.to_string() << " dmatch=" << e.dmatch_at_selection << "\n";
    for (const auto& c : r.checks) {
        out << c.name << ": " << to_string(c.status);
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        if (!c.counterexample.empty()) out << " counterexample: " << c.counterexample;
        out << "\n";
    }
    for (const auto& c : r.checks) {
        nlohmann::json j = {{"check", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
        if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
        out << j.dump() << "\n";
    }
    return out.str();
}

}  // namespace hyperboot
