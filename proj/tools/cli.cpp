#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "hyperboot/diagnostics.hpp"
#include "hyperboot/embedding.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/hg_io.hpp"
#include "hyperboot/process.hpp"
#include "hyperboot/repro.hpp"
#include "hyperboot/rng.hpp"
#include "hyperboot/search.hpp"
#include "hyperboot/trace_io.hpp"

namespace hyperboot::cli {

using nlohmann::json;

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::ostringstream ss;
    ss << in.rdbuf();
    return digest(ss.str());
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything a command reports: primary output goes to `out` and, unless it
// varies between runs, to `stable` as well.
struct Session {
    std::ostream& out;
    std::ostream& err;
    std::string stable;
    std::string command;
    std::string pattern;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
    json config = json::object();

    Session(std::ostream& o, std::ostream& e) : out(o), err(e) {}

    void say(const std::string& line) {
        out << line << '\n';
        stable += line + '\n';
    }
    void say_volatile(const std::string& line, const std::string& stable_line) {
        out << line << '\n';
        stable += stable_line + '\n';
    }
};

std::size_t default_workers() {
    const char* env = std::getenv("HYPERBOOT_WORKERS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) throw UsageError(std::string("HYPERBOOT_WORKERS must be a positive integer, got '") + env + "'");
    return v;
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join_ints(const std::vector<VertexId>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string fixed3(double x) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << x;
    return ss.str();
}

void write_text(Session& s, const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    s.outputs.push_back(path);
}

struct RunArgs {
    std::string pattern, input, trace, csv, output;
    std::size_t max_steps = 0;
    bool no_witnesses = false;
};

int cmd_run(Session& s, const RunArgs& a, std::size_t workers) {
    s.pattern = a.pattern;
    s.inputs.push_back(a.input);
    const Hypergraph h0 = load_hg1(a.input);
    const ExtensionPattern p = make_pattern(a.pattern, h0.k());
    const Trace tr = run(p, h0, {a.max_steps, workers});
    s.say("pattern " + p.name() + " k=" + std::to_string(h0.k()) + " n=" + std::to_string(h0.n()) +
          " initial_edges=" + std::to_string(h0.edge_count()));
    std::size_t total = h0.edge_count();
    for (const StepRecord& r : tr.steps()) {
        total += r.added.size();
        s.say("step " + std::to_string(r.index) + " added=" + std::to_string(r.added.size()) +
              " edges=" + std::to_string(total));
    }
    if (!a.trace.empty()) write_text(s, a.trace, format_trace_jsonl(tr, !a.no_witnesses));
    if (!a.csv.empty()) {
        std::ostringstream ss;
        write_trace_csv(ss, tr);
        write_text(s, a.csv, ss.str());
    }
    if (!a.output.empty()) write_text(s, a.output, format_hg1(tr.final_state()));
    if (!tr.terminated()) {
        s.say("tau unknown: no fixed point within " + std::to_string(tr.steps().size()) + " steps");
        return kBudget;
    }
    s.say("tau=" + std::to_string(*tr.tau()));
    return kOk;
}

int cmd_frontier(Session& s, const std::string& pattern, const std::string& input, bool witnesses,
                 std::size_t workers) {
    s.pattern = pattern;
    s.inputs.push_back(input);
    const Hypergraph h = load_hg1(input);
    const ExtensionPattern p = make_pattern(pattern, h.k());
    const Frontier f = frontier(p, h, workers);
    s.say("frontier " + std::to_string(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::string line = format_edge(f.new_edges[i]);
        if (witnesses) line += " <- " + join_ints(f.witnesses[i].vertex_map);
        s.say(line);
    }
    return kOk;
}

struct DiagnoseArgs {
    std::string pattern, trace, config;
    std::size_t samples = 16;
    std::uint64_t seed = 1;
};

int cmd_diagnose(Session& s, const DiagnoseArgs& a) {
    s.pattern = a.pattern;
    s.inputs.push_back(a.trace);
    s.seed = a.seed;
    DiagnosticsConfig cfg;
    if (!a.config.empty()) {
        s.inputs.push_back(a.config);
        cfg = load_config(a.config);
    }
    s.config = {{"ell", cfg.ell}, {"c", cfg.c},           {"s", cfg.s},
                {"gamma2", cfg.gamma2}, {"gamma1", cfg.gamma1}, {"gamma", cfg.gamma}, {"n0", cfg.n0}};
    std::ifstream in(a.trace);
    if (!in) throw ParseError("cannot open trace " + a.trace);
    std::string first;
    std::getline(in, first);
    std::size_t k = 0;
    try {
        k = json::parse(first).at("k").get<std::size_t>();
    } catch (const json::exception&) {
        throw ParseError(a.trace + ": missing or malformed trace header");
    }
    const ExtensionPattern p = make_pattern(a.pattern, k);
    const Trace tr = load_trace_jsonl(a.trace, p);
    if (!tr.terminated()) throw UsageError("trace " + a.trace + " does not end at a fixed point");
    ObservationOptions opts;
    opts.samples = a.samples;
    opts.seed = a.seed;
    const ObservationReport rep = check_observations(tr, p, cfg, opts);
    std::istringstream lines(format_report(rep));
    for (std::string line; std::getline(lines, line);) s.say(line);
    return rep.ok() ? kOk : kCheckFailed;
}

void emit_hg1(Session& s, const Hypergraph& h, const std::string& output) {
    if (output.empty()) {
        std::istringstream lines(format_hg1(h));
        for (std::string line; std::getline(lines, line);) s.say(line);
    } else {
        write_text(s, output, format_hg1(h));
    }
}

struct SearchArgs {
    std::string method, pattern, output;
    std::size_t k = 2, n = 4, restarts = 20, moves = 200;
    std::uint64_t seed = 1;
};

int cmd_search(Session& s, const SearchArgs& a, std::size_t workers) {
    s.pattern = a.pattern;
    const ExtensionPattern p = make_pattern(a.pattern, a.k);
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult r;
    if (a.method == "exhaustive") {
        r = exhaustive_max(a.k, a.n, p, workers);
    } else {
        s.seed = a.seed;
        r = local_search_max(a.k, a.n, p, {a.restarts, a.moves, a.seed, workers});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string row = a.method + "," + std::to_string(a.n) + "," + std::to_string(r.best_tau) + "," +
                            std::to_string(r.explored) + ",";
    s.say("method,n,best_tau,explored,seconds");
    s.say_volatile(row + fixed3(secs), row);
    if (!a.output.empty()) write_text(s, a.output, format_hg1(r.witness));
    return kOk;
}

int cmd_oracle(Session& s, std::size_t k, std::size_t n_max, std::size_t instances, std::uint64_t seed,
               std::size_t workers) {
    s.seed = seed;
    if (n_max > 8) throw UsageError("--n-max must be at most 8");
    if (n_max < k) throw UsageError("--n-max must be at least --k");
    const OracleCheckReport rep = oracle_check(k, n_max, instances, seed, workers);
    for (const std::string& m : rep.mismatches) s.say("mismatch " + m);
    s.say("compared=" + std::to_string(rep.compared) + " skipped=" + std::to_string(rep.skipped) +
          " mismatches=" + std::to_string(rep.mismatches.size()));
    return rep.mismatches.empty() ? kOk : kCheckFailed;
}

int cmd_repro(Session& s, const std::string& id, bool list, std::size_t workers) {
    if (list || id.empty()) {
        for (const std::string& x : repro_ids()) s.say(x);
        return kOk;
    }
    const auto& ids = repro_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown repro id '" + id + "'");
    const ReproResult r = run_repro(id, workers);
    // timing figures vary between runs, so only the verdict is stable
    for (const std::string& line : r.lines) s.say_volatile(line, "");
    s.say(std::string(r.passed ? "PASS " : "FAIL ") + r.id);
    return r.passed ? kOk : kCheckFailed;
}

json make_manifest(const Session& s, const std::vector<std::string>& argv, double secs, const std::string& started,
                   int code) {
    json inputs = json::array();
    for (const std::string& f : s.inputs) inputs.push_back({{"path", f}, {"digest", file_digest(f)}});
    json outputs = json::array();
    for (const std::string& f : s.outputs) outputs.push_back({{"path", f}, {"digest", file_digest(f)}});
    json m = {{"command", s.command},
              {"argv", argv},
              {"pattern", s.pattern.empty() ? json(nullptr) : json(s.pattern)},
              {"inputs", inputs},
              {"outputs", outputs},
              {"stdout_digest", digest(s.stable)},
              {"seed", s.seed ? json(*s.seed) : json(nullptr)},
              {"rng", Rng::kName},
              {"config", s.config},
              {"version", kToolVersion},
              {"started", started},
              {"wall_clock_seconds", std::round(secs * 1000) / 1000},
              {"exit", code}};
    return m;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, json* manifest_out);

int cmd_replay(Session& s, const std::string& path) {
    s.inputs.push_back(path);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest " + path);
    json m;
    try {
        std::ostringstream ss;
        ss << in.rdbuf();
        m = json::parse(ss.str());
        if (m.contains("manifest")) m = m.at("manifest");
        (void)m.at("argv").get<std::vector<std::string>>();
        (void)m.at("stdout_digest").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(path + ": not a manifest (" + e.what() + ")");
    }
    const auto argv = m.at("argv").get<std::vector<std::string>>();
    if (!argv.empty() && argv.front() == "replay") throw UsageError("refusing to replay a replay manifest");
    std::ostringstream sub_out, sub_err;
    json again;
    const int code = execute(argv, sub_out, sub_err, &again);
    bool same = true;
    auto compare = [&](const std::string& what, const json& want, const json& got) {
        const bool eq = want == got;
        s.say(what + (eq ? " identical" : " differs"));
        same = same && eq;
    };
    compare("exit", m.value("exit", 0), code);
    compare("stdout", m.at("stdout_digest"), again.at("stdout_digest"));
    if (m.contains("inputs")) compare("inputs", m.at("inputs"), again.at("inputs"));
    compare("outputs", m.value("outputs", json::array()), again.at("outputs"));
    s.say(same ? "replay ok" : "replay mismatch");
    return same ? kOk : kCheckFailed;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, json* manifest_out) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string started = utc_now();
    Session s{out, err};

    CLI::App app{"F-bootstrap percolation on k-uniform hypergraphs", "hyperboot"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write the run manifest here instead of stderr");
    std::optional<std::size_t> workers_opt;
    auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--workers", workers_opt, "worker threads (default $HYPERBOOT_WORKERS or 1)")
            ->check(CLI::PositiveNumber);
    };

    RunArgs ra;
    auto* run_cmd = app.add_subcommand("run", "run the process from an HG1 start to its fixed point");
    run_cmd->add_option("--pattern", ra.pattern, "pattern name or 2-uniform HG1 file")->required();
    run_cmd->add_option("input", ra.input, "starting hypergraph (HG1)")->required();
    run_cmd->add_option("--max-steps", ra.max_steps, "stop after this many steps (0: no limit)");
    run_cmd->add_option("--trace", ra.trace, "write the trace as JSON lines");
    run_cmd->add_option("--csv", ra.csv, "write per-step edge counts as CSV");
    run_cmd->add_option("-o,--output", ra.output, "write the final state (HG1)");
    run_cmd->add_flag("--no-witnesses", ra.no_witnesses, "omit copy witnesses from the trace");
    add_workers(run_cmd);

    std::string fr_pattern, fr_input;
    bool fr_witness = false;
    auto* fr_cmd = app.add_subcommand("frontier", "list the edges the next step adds");
    fr_cmd->add_option("--pattern", fr_pattern, "pattern name or 2-uniform HG1 file")->required();
    fr_cmd->add_option("input", fr_input, "host hypergraph (HG1)")->required();
    fr_cmd->add_flag("--witness", fr_witness, "print the least copy using each edge");
    add_workers(fr_cmd);

    DiagnoseArgs da;
    auto* dg_cmd = app.add_subcommand("diagnose", "check the structural observations on a saved trace");
    dg_cmd->add_option("--pattern", da.pattern, "pattern name or 2-uniform HG1 file")->required();
    dg_cmd->add_option("trace", da.trace, "trace file (JSON lines)")->required();
    dg_cmd->add_option("--config", da.config, "constants file (key = value)");
    dg_cmd->add_option("--samples", da.samples, "sampled (k-2)-sets per copy in the degree check");
    dg_cmd->add_option("--seed", da.seed, "seed for the degree check samples");

    std::string out_path;
    std::size_t ck = 3, ct = 3, cn = 20;
    double cp = 0.1;
    std::uint64_t cseed = 1;
    auto* con_cmd = app.add_subcommand("construct", "write a starting hypergraph");
    con_cmd->require_subcommand(1);
    auto* star_cmd = con_cmd->add_subcommand("star", "slow start for the star extension");
    star_cmd->add_option("--k", ck, "uniformity")->required();
    star_cmd->add_option("--t", ct, "star has t-1 leaves")->required();
    star_cmd->add_option("--n", cn, "vertex count")->required();
    star_cmd->add_option("-o,--output", out_path, "output file (default stdout)");
    auto* rnd_cmd = con_cmd->add_subcommand("random", "each k-set independently");
    rnd_cmd->add_option("--k", ck, "uniformity")->required();
    rnd_cmd->add_option("--n", cn, "vertex count")->required();
    rnd_cmd->add_option("--p", cp, "edge probability")->check(CLI::Range(0.0, 1.0));
    rnd_cmd->add_option("--seed", cseed, "seed");
    rnd_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

    SearchArgs sa;
    auto* se_cmd = app.add_subcommand("search", "search for slow starting hypergraphs");
    se_cmd->add_option("method", sa.method, "exhaustive or local")
        ->required()
        ->check(CLI::IsMember({"exhaustive", "local"}));
    se_cmd->add_option("--k", sa.k, "uniformity")->required();
    se_cmd->add_option("--n", sa.n, "vertex count")->required();
    se_cmd->add_option("--pattern", sa.pattern, "pattern name or 2-uniform HG1 file")->required();
    se_cmd->add_option("--restarts", sa.restarts, "local search restarts");
    se_cmd->add_option("--moves", sa.moves, "moves per restart");
    se_cmd->add_option("--seed", sa.seed, "local search seed");
    se_cmd->add_option("-o,--output", sa.output, "write the best start (HG1)");
    add_workers(se_cmd);

    std::size_t ok_k = 3, ok_nmax = 6, ok_inst = 50;
    std::uint64_t ok_seed = 1;
    auto* oc_cmd = app.add_subcommand("oracle-check", "compare the frontier with brute force");
    oc_cmd->add_option("--k", ok_k, "uniformity")->required();
    oc_cmd->add_option("--n-max", ok_nmax, "largest host (at most 8)");
    oc_cmd->add_option("--instances", ok_inst, "random hosts per pattern");
    oc_cmd->add_option("--seed", ok_seed, "seed");
    add_workers(oc_cmd);

    std::string rp_id;
    bool rp_list = false;
    auto* rp_cmd = app.add_subcommand("repro", "run one acceptance check");
    rp_cmd->add_option("id", rp_id, "check id");
    rp_cmd->add_flag("--list", rp_list, "list the ids");
    add_workers(rp_cmd);

    std::string rl_path;
    auto* rl_cmd = app.add_subcommand("replay", "re-run a manifest and compare outputs");
    rl_cmd->add_option("manifest", rl_path, "manifest file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    int code = kOk;
    try {
        const std::size_t workers = workers_opt ? *workers_opt : default_workers();
        if (*run_cmd) {
            s.command = "run";
            code = cmd_run(s, ra, workers);
        } else if (*fr_cmd) {
            s.command = "frontier";
            code = cmd_frontier(s, fr_pattern, fr_input, fr_witness, workers);
        } else if (*dg_cmd) {
            s.command = "diagnose";
            code = cmd_diagnose(s, da);
        } else if (*star_cmd) {
            s.command = "construct";
            emit_hg1(s, star_construction(ck, ct, cn), out_path);
        } else if (*rnd_cmd) {
            s.command = "construct";
            s.seed = cseed;
            emit_hg1(s, random_hypergraph(cn, ck, cp, cseed), out_path);
        } else if (*se_cmd) {
            s.command = "search";
            code = cmd_search(s, sa, workers);
        } else if (*oc_cmd) {
            s.command = "oracle-check";
            code = cmd_oracle(s, ok_k, ok_nmax, ok_inst, ok_seed, workers);
        } else if (*rp_cmd) {
            s.command = "repro";
            code = cmd_repro(s, rp_id, rp_list, workers);
        } else if (*rl_cmd) {
            s.command = "replay";
            code = cmd_replay(s, rl_path);
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        code = kBudget;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        code = kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        code = kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        code = kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        code = kCheckFailed;
    }

    // the recorded argv drops --manifest so a replay does not rewrite it
    std::vector<std::string> argv;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--manifest") {
            ++i;
            continue;
        }
        if (args[i].rfind("--manifest=", 0) == 0) continue;
        argv.push_back(args[i]);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const json m = make_manifest(s, argv, secs, started, code);
    if (manifest_out) {
        *manifest_out = m;
    } else if (!manifest_path.empty()) {
        std::ofstream f(manifest_path);
        if (!f) {
            err << "error: cannot write manifest " << manifest_path << '\n';
            return code == kOk ? kUsage : code;
        }
        f << m.dump(2) << '\n';
    } else {
        err << json{{"manifest", m}}.dump() << '\n';
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return execute(args, out, err, nullptr);
}

}  // namespace hyperboot::cli
