#include "isospec/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "isospec/common.hpp"
#include "isospec/rng.hpp"

namespace isospec {

std::optional<int> WeightedGraph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    const Edge probe{u, v, 0.0};
    auto it = std::lower_bound(edges.begin(), edges.end(), probe,
                               [](const Edge& a, const Edge& b) {
                                   return std::pair(a.u, a.v) < std::pair(b.u, b.v);
                               });
    if (it == edges.end() || it->u != u || it->v != v) return std::nullopt;
    return static_cast<int>(it - edges.begin());
}

double WeightedGraph::max_weight() const {
    double w = 0.0;
    for (const auto& e : edges) w = std::max(w, e.w);
    return w;
}

WeightedGraph make_graph(int n, std::vector<Edge> edges) {
    if (n <= 0) throw Error("graph needs a positive vertex count");
    for (auto& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n || e.u == e.v)
            throw Error("edge endpoints out of range");
        if (!(e.w > 0.0)) throw Error("edge weights must be strictly positive");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
            throw Error("duplicate edge");
    return WeightedGraph{n, std::move(edges)};
}

Matrix build_laplacian(const WeightedGraph& g) {
    Matrix l(g.n, g.n);
    for (const auto& e : g.edges) {
        l(e.u, e.v) -= e.w;
        l(e.v, e.u) -= e.w;
        l(e.u, e.u) += e.w;
        l(e.v, e.v) += e.w;
    }
    return l;
}

bool connected(const WeightedGraph& g) {
    if (g.n == 0) return false;
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.n;
}

WeightedGraph complete_graph(int n) {
    if (n < 1) throw Error("complete graph needs n >= 1");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.push_back({u, v, 1.0});
    return make_graph(n, std::move(e));
}

WeightedGraph wheel_graph(int rim) {
    if (rim < 3) throw Error("wheel needs rim size >= 3");
    std::vector<Edge> e;
    for (int i = 0; i < rim; ++i) e.push_back({i, (i + 1) % rim, 1.0});
    for (int i = 0; i < rim; ++i) e.push_back({i, rim, 1.0});
    return make_graph(rim + 1, std::move(e));
}

WeightedGraph cube_graph(int d) {
    if (d < 1 || d > 6) throw Error("cube dimension must be in [1, 6]");
    const int n = 1 << d;
    // bitstrings sorted by (popcount, value); label[v] is the vertex index
    // of bitstring v
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [](int a, int b) {
        return std::pair(std::popcount(static_cast<unsigned>(a)), a) <
               std::pair(std::popcount(static_cast<unsigned>(b)), b);
    });
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[order[i]] = i;
    std::vector<Edge> e;
    for (int v = 0; v < n; ++v)
        for (int bit = 0; bit < d; ++bit) {
            const int u = v ^ (1 << bit);
            if (v < u) e.push_back({label[v], label[u], 1.0});
        }
    return make_graph(n, std::move(e));
}

WeightedGraph barbell_graph(int n) {
    if (n < 2) throw Error("barbell needs clique size >= 2");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            e.push_back({u, v, 1.0});
            e.push_back({n + u, n + v, 1.0});
        }
    e.push_back({n - 1, n, 1.0});
    return make_graph(2 * n, std::move(e));
}

WeightedGraph lollipop_graph(int m, int p) {
    if (m < 2 || p < 1) throw Error("lollipop needs clique >= 2 and path >= 1");
    std::vector<Edge> e;
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) e.push_back({u, v, 1.0});
    e.push_back({m - 1, m, 1.0});
    for (int i = 0; i + 1 < p; ++i) e.push_back({m + i, m + i + 1, 1.0});
    return make_graph(m + p, std::move(e));
}

WeightedGraph path_graph(int n) {
    if (n < 1) throw Error("path needs n >= 1");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
    return make_graph(n, std::move(e));
}

WeightedGraph complete_minus_edge_graph(int n) {
    if (n < 3) throw Error("complete-minus-edge needs n >= 3");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!(u == n - 2 && v == n - 1)) e.push_back({u, v, 1.0});
    return make_graph(n, std::move(e));
}

WeightedGraph butterfly_graph() {
    return make_graph(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {1, 2, 1}, {3, 4, 1}});
}

WeightedGraph generate(const FamilySpec& family) {
    const auto& p = family.params;
    auto need = [&](size_t k) {
        if (p.size() != k) throw Error("family '" + family.name + "' expects " + std::to_string(k) + " parameter(s)");
    };
    if (family.name == "complete") { need(1); return complete_graph(p[0]); }
    if (family.name == "wheel") { need(1); return wheel_graph(p[0]); }
    if (family.name == "cube") { need(1); return cube_graph(p[0]); }
    if (family.name == "barbell") { need(1); return barbell_graph(p[0]); }
    if (family.name == "lollipop") { need(2); return lollipop_graph(p[0], p[1]); }
    if (family.name == "path") { need(1); return path_graph(p[0]); }
    if (family.name == "complete-minus-edge") { need(1); return complete_minus_edge_graph(p[0]); }
    if (family.name == "butterfly") { need(0); return butterfly_graph(); }
    throw Error("unknown family '" + family.name + "'");
}

WeightedGraph erdos_renyi_conditioned(int n, int m, std::uint64_t seed) {
    if (n < 1) throw Error("need n >= 1");
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > total) throw Error("edge count out of range");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(total);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    Rng rng(seed);
    rng.partial_shuffle(pairs, static_cast<size_t>(m));
    std::vector<Edge> e;
    e.reserve(m);
    for (int i = 0; i < m; ++i) e.push_back({pairs[i].first, pairs[i].second, 1.0});
    return make_graph(n, std::move(e));
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

namespace {
std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace

std::uint64_t graph_hash(const WeightedGraph& g) {
    std::string s = "g1|" + std::to_string(g.n) + "|" + std::to_string(g.edges.size()) + "|";
    for (const auto& e : g.edges)
        s += std::to_string(e.u) + "," + std::to_string(e.v) + "," + format_double(e.w) + ";";
    return fnv1a(s);
}

}  // namespace isospec
