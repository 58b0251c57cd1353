#pragma once

// Formula-based sparsifier constructions and special graph builders. Every
// construction carries its own eigenbasis and is re-verified through the
// independent oracle before it is returned.

#include <optional>
#include <string>

#include "isospec/eigen.hpp"
#include "isospec/graph.hpp"
#include "isospec/search.hpp"

namespace isospec {

struct ConstructionResult {
    WeightedGraph original;
    WeightedGraph graph;  // the sparsifier
    int claimed_k = 0;
    EigenBasis basis_used;
    std::string provenance;
    SparsifierCertificate certificate;
};

// K_n -> star at the last vertex, every edge weight n; holds for k = n-1
// (and below) with the star-last eigenbasis.
ConstructionResult complete_star(int n);

// W_{n+1} (rim n) -> hub star with every weight 3 - 2 cos(2 pi / n); k = 3.
ConstructionResult wheel_star(int rim);

// K_n minus its last edge -> star with weights n-2 centered at a vertex off
// the missing edge (default 0-based n-3); k = 2.
ConstructionResult complete_minus_edge_star(int n, std::optional<int> center = std::nullopt);

// Weighted near-complete graph (one missing edge) with no (n-2)-sparsifier:
// unit weights except two edges of weight 2n+3 at vertex n-3 (0-based).
WeightedGraph no_sparsifier_graph(int n);

// If the spanning tree's first-k eigenvectors are constant across every
// non-tree edge of g, the tree is a k-sparsifier of g for that basis.
std::optional<ConstructionResult> spanning_tree_principle(const WeightedGraph& g,
                                                          const WeightedGraph& tree, int k);

struct BarbellSpectrum {
    double alpha = 0.0;  // n/2 - sqrt(n^2 + 4(n-1))/2, in (-1, 0)
    double beta = 0.0;   // n/2 + sqrt(n^2 + 4(n-1))/2, > n
    Vec values;          // 0, 1+alpha, n (x 2n-3), 1+beta
    Matrix vectors;      // orthonormalized closed-form eigenvectors
};

// Closed-form spectrum of B_{n,n}; oracle for eig_sym on the generated
// barbell.
BarbellSpectrum barbell_spectrum(int n);

}  // namespace isospec
