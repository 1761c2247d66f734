#include "hyperboot/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperboot/errors.hpp"

namespace hyperboot {

using nlohmann::json;

namespace {

json edge_list(const std::vector<KSet>& edges) {
    json arr = json::array();
    for (const KSet& e : edges) arr.push_back(std::vector<int>(e.begin(), e.end()));
    return arr;
}

std::vector<KSet> parse_edges(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an edge list");
    std::vector<KSet> out;
    for (const json& e : arr) {
        if (!e.is_array()) throw ParseError(where + ": expected an edge");
        std::vector<VertexId> vs;
        for (const json& v : e) {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 65535) throw ParseError(where + ": bad vertex");
            vs.push_back(static_cast<VertexId>(v.get<std::uint64_t>()));
        }
        try {
            out.push_back(KSet::from_unsorted(vs));
        } catch (const std::exception& ex) {
            throw ParseError(where + ": " + ex.what());
        }
    }
    return out;
}

CopyWitness witness_from_map(const ExtensionPattern& p, std::vector<VertexId> map) {
    CopyWitness w;
    w.vertex_map = std::move(map);
    if (w.vertex_map.size() != p.vertex_count()) return w;
    for (std::size_t j = 0; j < p.edge_count(); ++j) {
        std::vector<VertexId> img;
        for (VertexId x : p.edge(j)) img.push_back(w.vertex_map[x]);
        w.edges.push_back(KSet::from_unsorted(img));
    }
    return w;
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const Trace& tr, bool witnesses) {
    const Hypergraph& h0 = tr.initial();
    json header = {{"format", "hyperboot-trace"}, {"version", kTraceFormatVersion}, {"pattern", tr.pattern_id()},
                   {"k", h0.k()},             {"n", h0.n()},                    {"initial", edge_list(h0.edges())}};
    out << header.dump() << "\n";
    for (const StepRecord& rec : tr.steps()) {
        json line = {{"step", rec.index}, {"added", edge_list(rec.added)}};
        if (witnesses) {
            json ws = json::array();
            for (const CopyWitness& w : rec.witnesses) ws.push_back(w.vertex_map);
            line["witnesses"] = ws;
        }
        out << line.dump() << "\n";
    }
    json end = {{"end", true}, {"terminated", tr.terminated()}, {"steps", tr.steps().size()}};
    end["tau"] = tr.terminated() ? json(*tr.tau()) : json(nullptr);
    out << end.dump() << "\n";
}

std::string format_trace_jsonl(const Trace& tr, bool witnesses) {
    std::ostringstream ss;
    write_trace_jsonl(ss, tr, witnesses);
    return ss.str();
}

void save_trace_jsonl(const std::string& path, const Trace& tr, bool witnesses) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_trace_jsonl(out, tr, witnesses);
}

Trace read_trace_jsonl(std::istream& in, const ExtensionPattern& p) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&](json& j) {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
            }
            return true;
        }
        return false;
    };
    auto where = [&] { return "trace line " + std::to_string(lineno); };

    json header;
    if (!next(header) || !header.is_object() || header.value("format", "") != "hyperboot-trace")
        throw ParseError("not a hyperboot trace");
    if (header.value("version", 0) != kTraceFormatVersion) throw ParseError("unsupported trace version");
    try {
        const std::size_t k = header.at("k").get<std::size_t>();
        const std::size_t n = header.at("n").get<std::size_t>();
        if (k != p.k()) throw ParseError("trace uniformity " + std::to_string(k) + " differs from the pattern's");
        Hypergraph current = make_hypergraph(n, k, parse_edges(header.at("initial"), where()));
        Trace tr(header.at("pattern").get<std::string>(), current);
        json j;
        bool ended = false;
        while (next(j)) {
            if (j.contains("end")) {
                if (j.at("terminated").get<bool>()) tr.mark_fixed_point();
                if (j.at("steps").get<std::size_t>() != tr.steps().size()) throw ParseError(where() + ": step count mismatch");
                ended = true;
                break;
            }
            StepRecord rec;
            rec.index = j.at("step").get<std::size_t>();
            if (rec.index != tr.steps().size() + 1) throw ParseError(where() + ": steps out of order");
            rec.added = parse_edges(j.at("added"), where());
            if (rec.added.empty()) throw ParseError(where() + ": empty step");
            for (std::size_t i = 0; i < rec.added.size(); ++i) {
                current.validate_edge(rec.added[i]);
                if (current.contains(rec.added[i])) throw ParseError(where() + ": edge added twice");
                if (i > 0 && !(rec.added[i - 1] < rec.added[i])) throw ParseError(where() + ": added edges not ascending");
            }
            if (j.contains("witnesses")) {
                const json& ws = j.at("witnesses");
                if (!ws.is_array() || ws.size() != rec.added.size()) throw ParseError(where() + ": witness count mismatch");
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    CopyWitness w = witness_from_map(p, ws[i].get<std::vector<VertexId>>());
                    if (!validate_witness(p, current, w, rec.added[i]) || !w.uses(rec.added[i]))
                        throw ParseError(where() + ": invalid witness for " + rec.added[i].to_string());
                    rec.witnesses.push_back(std::move(w));
                }
            } else {
                const CopyFinder finder(p, current);
                for (const KSet& e : rec.added) {
                    auto w = finder.least_using(e);
                    if (!w) throw ParseError(where() + ": " + e.to_string() + " creates no copy");
                    rec.witnesses.push_back(std::move(*w));
                }
            }
            Hypergraph after = current.with_edges(rec.added);
            tr.append(std::move(rec), after);
            current = std::move(after);
        }
        if (!ended) throw ParseError("trace has no end record");
        return tr;
    } catch (const json::exception& e) {
        throw ParseError(where() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where() + ": " + e.what());
    }
}

Trace load_trace_jsonl(const std::string& path, const ExtensionPattern& p) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open trace " + path);
    return read_trace_jsonl(in, p);
}

void write_trace_csv(std::ostream& out, const Trace& tr) {
    out << "step,edges_added,cumulative_edges\n";
    std::size_t total = tr.initial().edge_count();
    out << "0,0," << total << "\n";
    for (const StepRecord& rec : tr.steps()) {
        total += rec.added.size();
        out << rec.index << "," << rec.added.size() << "," << total << "\n";
    }
}

void save_trace_csv(const std::string& path, const Trace& tr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_trace_csv(out, tr);
}

}  // namespace hyperboot
