#pragma once

// Dense symmetric eigendecomposition with deterministic ordering and sign
// conventions. Cyclic Jacobi; adequate and bit-reproducible at desk scale.

#include <cstdint>
#include <utility>
#include <vector>

#include "isospec/graph.hpp"
#include "isospec/matrix.hpp"

namespace isospec {

struct EigenBasis {
    Vec values;                                 // ascending
    Matrix vectors;                             // column i pairs with values[i]
    std::vector<std::pair<int, int>> clusters;  // [begin, end) runs of equal values

    int n() const { return static_cast<int>(values.size()); }
    // true iff values[k-1] and values[k] (1-based lambda_k, lambda_{k+1})
    // fall in the same degeneracy cluster
    bool degenerate_cut(int k) const;
    Vec vector(int i) const { return vectors.col(i); }
};

// Deterministic symmetric eigendecomposition.
//  - sign convention: in each eigenvector the first entry with magnitude
//    > 1e-8 is positive
//  - each degeneracy cluster's basis is canonicalized by projecting
//    coordinate directions onto the cluster subspace in index order
EigenBasis eig_sym(const Matrix& m);

// Same decomposition without clustering, canonicalization or the sign rule.
// Still deterministic; the basis inside a degenerate eigenspace is whatever
// the sweep produced. For inner loops that only consume Phi f(Lambda) Phi^T.
EigenBasis eig_sym_basic(const Matrix& m);

// Eigenbasis of the Laplacian of a connected graph, with phi_1 pinned to
// 1/sqrt(n) exactly and the rest re-orthonormalized against it.
EigenBasis laplacian_eigbasis(const WeightedGraph& g);

// Explicit closed-form bases for the supported families, ordered ascending
// by eigenvalue, normalized, with a fixed documented vector choice per family.
enum class CanonicalFamily { complete, cube, wheel, complete_minus_edge };
EigenBasis canonical_basis(const WeightedGraph& g, CanonicalFamily family);

// Star-last variant for complete graphs: phi_n = (1_{n-1}, 1-n)/sqrt(n(n-1)).
EigenBasis complete_basis_star_last(int n);
// Variant of the complete-minus-edge basis with the star center at 0-based
// vertex j (j <= n-3): phi_n = (1_n - n e_j)/sqrt(n(n-1)).
EigenBasis complete_minus_edge_basis(int n, int center);

// Nearest PSD matrix in Frobenius norm (eigenvalue clamping).
Matrix project_psd(const Matrix& m);

double min_eig(const Matrix& m);

// Checks Phi^T Phi = I and L Phi = Phi diag(values) within tolerances.
bool is_eigenbasis_of(const Matrix& l, const EigenBasis& basis, double tolerance);

// Clusters for a sorted value list: runs with gap <= 1e-7*(1+|value|).
std::vector<std::pair<int, int>> cluster_values(const Vec& sorted_values);

// FNV-1a over Phi rounded to 1e-9; platform-stable.
std::uint64_t basis_fingerprint(const EigenBasis& basis);

}  // namespace isospec
