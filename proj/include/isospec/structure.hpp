#pragma once

// The spectrahedral description of the k-isospectral subgraphs of a graph:
// Laplacians L = F + Phi_tail Y Phi_tail^T with Y PSD, the edge entries of L
// nonpositive and the non-edge entries zero. Membership testing, the Y <-> L
// maps, and the independent verification oracle live here.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "isospec/common.hpp"
#include "isospec/eigen.hpp"
#include "isospec/graph.hpp"
#include "isospec/matrix.hpp"

namespace isospec {

using VertexPair = std::pair<int, int>;  // (s, t), s < t

struct SpectralStructure {
    WeightedGraph g;
    int k = 0;
    EigenBasis basis;
    double cut_value = 0.0;  // lambda_k
    Matrix fixed;            // F, n x n
    Matrix tail;             // Phi_{>k}, n x (n-k)
    std::vector<VertexPair> edge_pairs;
    std::vector<VertexPair> non_edge_pairs;
    bool degenerate_cut = false;

    int tail_dim() const { return g.n - k; }
    // row s of Phi_{>k}: the coefficient vector c_s
    Vec coeff_vector(int s) const { return Vec(tail.row(s), tail.row(s) + tail_dim()); }
    // the symmetric coefficient matrix M_st = (c_s c_t^T + c_t c_s^T)/2,
    // so that L_st = F_st + <Y, M_st> for symmetric Y
    Matrix pair_matrix(int s, int t) const;
    // <Y, M_st> = c_s^T Y c_t for symmetric Y
    double pair_value(const Matrix& y, int s, int t) const;
    // <M_st, M_st>
    double pair_matrix_norm2(int s, int t) const;
    // Y of the original graph: diag(lambda_{k+i} - lambda_k)
    Matrix own_y() const;
};

struct MembershipReport {
    bool is_member = false;
    double psd_violation = 0.0;                          // max(0, -min_eig(Y))
    std::map<VertexPair, double> inequality_residuals;   // edges; >0 means violated
    std::map<VertexPair, double> equality_residuals;     // non-edges; |L_st|
    std::vector<VertexPair> zero_edges;                  // |L_st| <= zero threshold
    double max_inequality() const;
    double max_equality() const;
};

SpectralStructure build_structure(const WeightedGraph& g, int k, const EigenBasis& basis);

// L = F + Phi_{>k} Y Phi_{>k}^T (no feasibility check)
Matrix laplacian_from_y(const SpectralStructure& s, const Matrix& y);

// Y = Phi_{>k}^T (L - F) Phi_{>k} plus the max-abs reconstruction residual
// (nonzero iff L is outside the affine span).
std::pair<Matrix, double> y_from_laplacian(const SpectralStructure& s, const Matrix& l);

MembershipReport membership(const SpectralStructure& s, const Matrix& y,
                            double feas_tol = tol::feasibility);

struct VerifyDiagnostics {
    bool verified = false;
    double max_eigenpair_residual = 0.0;  // ||L phi_i - lambda_i phi_i||_2, i <= k
    double psd_violation = 0.0;           // of the recovered Y
    double reconstruction_residual = 0.0;
    std::string failure;
};

// Independent oracle: candidate (edge subset of g) is k-isospectral to g
// with respect to basis. Does not share code with the feasibility solver.
VerifyDiagnostics verify_isospectral(const WeightedGraph& g, const WeightedGraph& candidate,
                                     int k, const EigenBasis& basis);

// Weighted subgraph read off a Laplacian-like matrix: edges of g whose entry
// is below the zero threshold are dropped, the rest keep weight -L_st.
WeightedGraph subgraph_from_laplacian(const WeightedGraph& g, const Matrix& l);

double zero_edge_threshold(const WeightedGraph& g);

}  // namespace isospec
