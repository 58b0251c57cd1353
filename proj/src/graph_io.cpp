#include "isospec/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "isospec/common.hpp"

namespace isospec {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw Error("line " + std::to_string(line) + ": " + what);
}

struct Cursor {
    std::istringstream in;
    int line = 0;

    explicit Cursor(const std::string& text) : in(text) {}

    // next non-comment, non-blank line; false at end of input
    bool next(std::string& out) {
        std::string s;
        while (std::getline(in, s)) {
            ++line;
            size_t i = s.find_first_not_of(" \t\r");
            if (i == std::string::npos || s[i] == '#') continue;
            out = s;
            return true;
        }
        return false;
    }
};

long parse_int(const std::string& tok, int line, const char* what) {
    long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        fail(line, std::string("malformed ") + what + " '" + tok + "'");
    return v;
}

double parse_weight(const std::string& tok, int line) {
    try {
        size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        fail(line, "malformed weight '" + tok + "'");
    }
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

WeightedGraph parse_graph(const std::string& text) {
    Cursor cur(text);
    std::string line;
    if (!cur.next(line)) throw Error("empty input: missing 'n m' header");
    auto head = tokens(line);
    if (head.size() != 2) fail(cur.line, "malformed header, expected 'n m'");
    const long n = parse_int(head[0], cur.line, "vertex count");
    const long m = parse_int(head[1], cur.line, "edge count");
    if (n < 1) fail(cur.line, "vertex count must be positive");
    if (m < 0) fail(cur.line, "edge count must be nonnegative");

    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long i = 0; i < m; ++i) {
        if (!cur.next(line)) throw Error("unexpected end of input: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        auto tok = tokens(line);
        if (tok.size() != 3) fail(cur.line, "malformed edge, expected 'u v w'");
        const long u = parse_int(tok[0], cur.line, "vertex index");
        const long v = parse_int(tok[1], cur.line, "vertex index");
        const double w = parse_weight(tok[2], cur.line);
        if (u < 1 || u > n || v < 1 || v > n) fail(cur.line, "vertex index out of range");
        if (u >= v) fail(cur.line, "edge endpoints must satisfy u < v");
        if (!(w > 0.0)) fail(cur.line, "non-positive weight");
        Edge e{static_cast<int>(u - 1), static_cast<int>(v - 1), w};
        for (const auto& prev : edges)
            if (prev.u == e.u && prev.v == e.v) fail(cur.line, "duplicate edge");
        edges.push_back(e);
    }
    if (cur.next(line)) fail(cur.line, "trailing content after " + std::to_string(m) + " edges");
    return make_graph(static_cast<int>(n), std::move(edges));
}

std::string write_graph(const WeightedGraph& g) {
    std::string out = std::to_string(g.n) + " " + std::to_string(g.edges.size()) + "\n";
    for (const auto& e : g.edges)
        out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + format_double(e.w) + "\n";
    return out;
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return parse_graph(ss.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

void save_graph_file(const WeightedGraph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << write_graph(g);
}

}  // namespace isospec
