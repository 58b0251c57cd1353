#pragma once

// Sparsifier search: greedy maximal deletion sets, the generic edge-count
// bound, the rank-one construction for complete graphs, and the cube
// rigidity check.

#include <optional>
#include <string>
#include <vector>

#include "isospec/feasibility.hpp"
#include "isospec/structure.hpp"

namespace isospec {

struct StructureRef {
    std::uint64_t graph_hash = 0;
    int k = 0;
    std::uint64_t basis_fingerprint = 0;
    bool degenerate_cut = false;
};

struct SparsifierCertificate {
    StructureRef ref;
    Matrix y;  // (n-k) x (n-k)
    Matrix l;  // n x n
    std::vector<VertexPair> deleted_edges;
    double psd_residual = 0.0;
    double inequality_residual = 0.0;
    double equality_residual = 0.0;
    bool verified = false;
    std::vector<std::string> warnings;
};

// Certificate for a given feasible Y: Laplacian, zero edges, residuals, and
// the independent verification verdict.
SparsifierCertificate certificate_from_y(const SpectralStructure& s, const Matrix& y);

enum class EdgeOrder { slack, lex, weight };
EdgeOrder edge_order_from_string(const std::string& name);

std::vector<VertexPair> ordered_edges(const SpectralStructure& s, EdgeOrder order);

struct GreedyResult {
    SparsifierCertificate certificate;
    std::vector<std::pair<VertexPair, FeasibilityStatus>> attempts;
    std::vector<VertexPair> accepted;
};

GreedyResult greedy_sparsify(const SpectralStructure& s, EdgeOrder order = EdgeOrder::slack,
                             const SolverOptions& opt = {});

// Largest k >= 2 with m > C(n,2) - C(n-k+1,2); nullopt when even k = 2 fails.
std::optional<int> la_heuristic_max_k(int n, long long m);

// L_H = L_G + c phi_n phi_n^T for the smallest c > 0 zeroing an edge; needs
// phi_n (the last basis column) to have at least three nonzero entries.
std::optional<SparsifierCertificate> rank_one_sparsifier(const WeightedGraph& g,
                                                         const EigenBasis& basis);

struct RigidityReport {
    int d = 0;
    int k = 0;
    bool own_feasible = false;
    std::vector<std::pair<VertexPair, FeasibilityStatus>> single_edge_attempts;
    int deletable_edges = 0;  // attempts with status found
    int greedy_deletions = 0;
    int perturbation_checks = 0;
    int perturbation_failures = 0;  // verify_isospectral rejections (want all)
    bool rigid = false;
};

// k defaults to d+1 (both nontrivial eigenspaces held fixed); the weight
// perturbation check runs only in that case.
RigidityReport cube_rigidity_check(int d, std::optional<int> k_override = std::nullopt,
                                   const SolverOptions& opt = {});

}  // namespace isospec
