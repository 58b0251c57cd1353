#pragma once

// Weighted undirected graphs, Laplacian assembly and family generators.
// Vertices are 0-based in memory and 1-based in files and reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isospec/matrix.hpp"

namespace isospec {

struct Edge {
    int u = 0, v = 0;  // u < v
    double w = 1.0;    // > 0
    bool operator==(const Edge&) const = default;
};

struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;  // sorted by (u, v), unique

    bool operator==(const WeightedGraph&) const = default;

    int edge_count() const { return static_cast<int>(edges.size()); }
    // index into edges, or nullopt
    std::optional<int> edge_index(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_index(u, v).has_value(); }
    double max_weight() const;
};

// Validates invariants (0 <= u < v < n, w > 0, unique), sorts the edge list.
WeightedGraph make_graph(int n, std::vector<Edge> edges);

Matrix build_laplacian(const WeightedGraph& g);

bool connected(const WeightedGraph& g);

// Family generators, all with unit weights and fixed labeling conventions.
WeightedGraph complete_graph(int n);
// rim 0..n-1 with i ~ i+1 (mod n), hub = n; n+1 vertices total
WeightedGraph wheel_graph(int rim);
// vertices are the bitstrings of {0,1}^d sorted by (popcount, value);
// so that each parallel edge class groups by coordinate bit
WeightedGraph cube_graph(int d);
// two n-cliques {0..n-1}, {n..2n-1}, bridge (n-1, n)
WeightedGraph barbell_graph(int n);
// m-clique {0..m-1}, path {m..m+p-1}, bridge (m-1, m)
WeightedGraph lollipop_graph(int m, int p);
WeightedGraph path_graph(int n);
// K_n minus the edge (n-2, n-1) (0-based; last two vertices)
WeightedGraph complete_minus_edge_graph(int n);
// the 5-vertex bowtie fixture: center 0 adjacent to all, plus (1,2) and (3,4)
WeightedGraph butterfly_graph();

struct FamilySpec {
    std::string name;          // complete|wheel|cube|barbell|lollipop|path|complete-minus-edge|butterfly
    std::vector<int> params;
};

WeightedGraph generate(const FamilySpec& family);

// Uniform m-subset of the n(n-1)/2 vertex pairs, unit weights; deterministic
// for a fixed seed (xoshiro256** + Fisher-Yates, see rng.hpp).
WeightedGraph erdos_renyi_conditioned(int n, int m, std::uint64_t seed);

// 64-bit FNV-1a over a canonical text serialization; stable across platforms.
std::uint64_t graph_hash(const WeightedGraph& g);

// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace isospec
