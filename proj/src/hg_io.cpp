#include "hyperboot/hg_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "hyperboot/errors.hpp"

namespace hyperboot {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
    throw ParseError("HG1 line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

Hypergraph read_hg1(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(in, line, lineno)) throw ParseError("HG1: missing header");
    std::istringstream header(line);
    long long k = -1, n = -1, m = -1;
    if (!(header >> k >> n >> m)) fail(lineno, "expected header 'k n m'");
    std::string extra;
    if (header >> extra) fail(lineno, "trailing tokens in header");
    if (k < 2 || k > static_cast<long long>(kMaxUniformity)) fail(lineno, "unsupported uniformity");
    if (n < k) fail(lineno, "vertex count below uniformity");
    if (m < 0) fail(lineno, "negative edge count");

    std::vector<KSet> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_content_line(in, line, lineno)) fail(lineno, "fewer edges than declared");
        std::istringstream row(line);
        std::vector<VertexId> vs;
        long long v;
        while (row >> v) {
            if (v < 0 || v >= n) fail(lineno, "vertex index out of range");
            vs.push_back(static_cast<VertexId>(v));
        }
        if (!row.eof()) fail(lineno, "non-integer token");
        if (static_cast<long long>(vs.size()) != k) fail(lineno, "uniformity violation");
        for (std::size_t j = 1; j < vs.size(); ++j)
            if (vs[j - 1] >= vs[j]) fail(lineno, "edge vertices must be strictly increasing");
        edges.push_back(KSet::from_sorted(vs));
    }
    if (next_content_line(in, line, lineno)) fail(lineno, "more edges than declared");
    Hypergraph h = make_hypergraph(static_cast<std::size_t>(n), static_cast<std::size_t>(k), edges);
    if (h.edge_count() != edges.size()) throw ParseError("HG1: duplicate edges");
    return h;
}

Hypergraph parse_hg1(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_hg1(in);
}

Hypergraph load_hg1(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_hg1(in);
}

std::string format_edge(const KSet& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s.push_back(' ');
        s += std::to_string(e[i]);
    }
    return s;
}

void write_hg1(std::ostream& out, const Hypergraph& h) {
    out << h.k() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
    for (const KSet& e : h.edges()) out << format_edge(e) << '\n';
}

std::string format_hg1(const Hypergraph& h) {
    std::ostringstream os;
    write_hg1(os, h);
    return os.str();
}

void save_hg1(const std::string& path, const Hypergraph& h) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    write_hg1(out, h);
}

}  // namespace hyperboot
