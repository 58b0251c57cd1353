#pragma once

// Quadratic-form sparsification: the polyhedron of nonnegative edge weights
// whose Laplacian quadratic form agrees with the original on the span of the
// first k eigenvectors, sparse vertices of it by linear programming, and the
// verification and containment checks.

#include <optional>
#include <string>
#include <vector>

#include "isospec/eigen.hpp"
#include "isospec/graph.hpp"
#include "isospec/structure.hpp"

namespace isospec {

struct QPolyhedron {
    WeightedGraph g;
    int k = 0;
    std::uint64_t basis_fingerprint = 0;
    // equality rows over the edge-weight variables (in g.edges order):
    // (k-1) diagonal rows <L(w), phi_i phi_i^T> = lambda_i, i = 2..k, then
    // C(k-1,2) cross rows <L(w), phi_i phi_j^T> = 0, 2 <= i < j <= k
    std::vector<Vec> rows;
    Vec rhs;
    // bounds: w_e >= 0 for every edge (implicit)

    int variables() const { return g.edge_count(); }
    double max_row_violation(const Vec& w) const;
};

QPolyhedron build_qpolyhedron(const WeightedGraph& g, int k, const EigenBasis& basis);

struct QCertificate {
    Vec w;  // nonnegative, in g.edges order
    std::vector<VertexPair> zero_edges;
    bool connected = false;
    Vec eigenreport;            // full spectrum of L(w)
    double max_row_violation = 0.0;
    double qform_residual = 0.0;      // max |phi_i^T L(w) phi_j - lambda_i [i=j]|
    double det_reduced = 0.0;         // det of L(w) with last row/col removed
    bool passes = false;
};

// Weight vector of the original graph.
Vec weights_of(const WeightedGraph& g);

// Laplacian of g reweighted by w (zeros allowed).
Matrix laplacian_from_weights(const WeightedGraph& g, const Vec& w);

struct LpResult {
    enum class Status { optimal, unbounded } status = Status::optimal;
    Vec w;
    double objective = 0.0;
};

// Minimizes objective^T w over the polyhedron; returns a vertex. Dense
// primal simplex with Bland's rule, started from a vertex obtained by
// purifying the known feasible point w(G).
LpResult lp_vertex(const QPolyhedron& q, const Vec& objective);

QCertificate verify_qform(const WeightedGraph& g, const Vec& w, int k, const EigenBasis& basis);

struct ContainmentReport {
    int samples = 0;
    double max_violation = 0.0;
    bool contained = false;
};

// Samples random convex combinations of the known feasible Y points of s,
// maps them to weight vectors, and checks them against q's rows.
ContainmentReport containment_check(const SpectralStructure& s, const QPolyhedron& q,
                                    const std::vector<Matrix>& known_feasible, int samples,
                                    std::uint64_t seed = 2024);

}  // namespace isospec
