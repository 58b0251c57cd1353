#include "isospec/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "isospec/common.hpp"
#include "isospec/structure.hpp"

namespace isospec {

namespace {

ConstructionResult finish(WeightedGraph original, WeightedGraph sparsifier, int k,
                          EigenBasis basis, std::string provenance) {
    ConstructionResult r;
    r.original = std::move(original);
    r.graph = std::move(sparsifier);
    r.claimed_k = k;
    r.basis_used = std::move(basis);
    r.provenance = std::move(provenance);
    const SpectralStructure s = build_structure(r.original, k, r.basis_used);
    auto [y, residual] = y_from_laplacian(s, build_laplacian(r.graph));
    if (residual > tol::verify)
        throw Error(r.provenance + ": constructed Laplacian left the affine span");
    r.certificate = certificate_from_y(s, y);
    if (!r.certificate.verified)
        throw Error(r.provenance + ": construction failed independent verification");
    return r;
}

WeightedGraph star(int n, int center, double weight) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        if (i != center) e.push_back({std::min(i, center), std::max(i, center), weight});
    return make_graph(n, std::move(e));
}

}  // namespace

ConstructionResult complete_star(int n) {
    if (n < 3) throw Error("complete_star needs n >= 3");
    const WeightedGraph g = complete_graph(n);
    const EigenBasis basis = complete_basis_star_last(n);
    return finish(g, star(n, n - 1, static_cast<double>(n)), n - 1, basis, "complete-star");
}

ConstructionResult wheel_star(int rim) {
    if (rim < 4) throw Error("wheel_star needs rim size >= 4");
    const WeightedGraph g = wheel_graph(rim);
    const EigenBasis basis = canonical_basis(g, CanonicalFamily::wheel);
    const double lambda = 3.0 - 2.0 * std::cos(2.0 * std::acos(-1.0) / rim);

    // numeric validation of the closed form: the reassigned spectrum
    // lambda * diag(0, 1, ..., 1, rim+1) over the wheel's eigenbasis must
    // reproduce lambda * L_{K_{1,rim}} entrywise
    const int n = rim + 1;
    Matrix l_proof(n, n);
    for (int j = 1; j < n; ++j) {
        const double value = (j == n - 1) ? lambda * n : lambda;
        add_outer(l_proof, value, basis.vector(j), basis.vector(j));
    }
    const WeightedGraph tree = star(n, rim, lambda);
    if (max_abs(l_proof - build_laplacian(tree)) > 1e-9)
        throw Error("wheel-star: spectral identity check failed");

    return finish(g, tree, 3, basis, "wheel-star");
}

ConstructionResult complete_minus_edge_star(int n, std::optional<int> center_opt) {
    if (n < 4) throw Error("complete_minus_edge_star needs n >= 4");
    const int center = center_opt.value_or(n - 3);
    const WeightedGraph g = complete_minus_edge_graph(n);
    const EigenBasis basis = complete_minus_edge_basis(n, center);
    return finish(g, star(n, center, static_cast<double>(n - 2)), 2, basis,
                  "complete-minus-edge-star");
}

WeightedGraph no_sparsifier_graph(int n) {
    if (n < 4) throw Error("no_sparsifier_graph needs n >= 4");
    std::vector<Edge> edges;
    for (int u = 0; u < n - 3; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    edges.push_back({n - 3, n - 2, 2.0 * n + 3.0});
    edges.push_back({n - 3, n - 1, 2.0 * n + 3.0});
    const WeightedGraph g = make_graph(n, std::move(edges));

    // cross-check the assembled weights against the defining spectrum
    // 0, n (x n-3), 3n, 7n+6 with the last two eigenvectors pinned
    Matrix l_spec(n, n);
    {
        Vec odd(n, 0.0);
        odd[n - 2] = 1.0 / std::sqrt(2.0);
        odd[n - 1] = -1.0 / std::sqrt(2.0);
        Vec last(n, 0.0);
        last[n - 3] = 2.0 / std::sqrt(6.0);
        last[n - 2] = -1.0 / std::sqrt(6.0);
        last[n - 1] = -1.0 / std::sqrt(6.0);
        // n * (I - J/n - P_odd - P_last) + 3n * P_odd + (7n+6) * P_last
        for (int i = 0; i < n; ++i) l_spec(i, i) = n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) l_spec(i, j) -= 1.0;
        add_outer(l_spec, 2.0 * n, odd, odd);
        add_outer(l_spec, 6.0 * n + 6.0, last, last);
    }
    if (max_abs(build_laplacian(g) - l_spec) > 1e-9)
        throw Error("no_sparsifier_graph: weight/spectrum cross-check failed");
    return g;
}

std::optional<ConstructionResult> spanning_tree_principle(const WeightedGraph& g,
                                                          const WeightedGraph& tree, int k) {
    if (tree.n != g.n) throw Error("tree has the wrong vertex count");
    if (tree.edge_count() != g.n - 1 || !connected(tree))
        throw Error("not a spanning tree");
    for (const auto& e : tree.edges) {
        const auto idx = g.edge_index(e.u, e.v);
        if (!idx || g.edges[*idx].w != e.w)
            throw Error("tree is not an edge subset of g with matching weights");
    }
    if (k < 1 || k > g.n) throw Error("k out of range");

    const EigenBasis tree_basis = laplacian_eigbasis(tree);
    for (const auto& e : g.edges) {
        if (tree.has_edge(e.u, e.v)) continue;
        for (int i = 0; i < k; ++i)
            if (std::fabs(tree_basis.vectors(e.u, i) - tree_basis.vectors(e.v, i)) > 1e-8)
                return std::nullopt;
    }

    // The tree's first k eigenvectors are eigenvectors of g with the same
    // eigenvalues; splice them into g's eigenbasis cluster by cluster.
    EigenBasis basis = laplacian_eigbasis(g);
    for (int i = 0; i < k; ++i) {
        if (std::fabs(basis.values[i] - tree_basis.values[i]) > 1e-7 * (1.0 + basis.values[i]))
            return std::nullopt;  // leading spectra disagree, principle void
    }
    for (const auto& [begin, end] : basis.clusters) {
        if (begin >= k) continue;
        const int fixed_until = std::min(k, end);
        std::vector<Vec> cols;
        for (int j = begin; j < fixed_until; ++j) cols.push_back(tree_basis.vector(j));
        for (int j = begin; j < end; ++j) cols.push_back(basis.vector(j));
        // orthonormalize, tree vectors first; drop dependents
        std::vector<Vec> kept;
        for (Vec& v : cols) {
            for (int pass = 0; pass < 2; ++pass)
                for (const Vec& u : kept) axpy(-dot(u, v), u, v);
            if (norm2(v) <= 1e-6) continue;
            scale(1.0 / norm2(v), v);
            kept.push_back(std::move(v));
            if (static_cast<int>(kept.size()) == end - begin) break;
        }
        if (static_cast<int>(kept.size()) != end - begin) return std::nullopt;
        for (int j = begin; j < end; ++j) basis.vectors.set_col(j, kept[j - begin]);
    }
    if (!is_eigenbasis_of(build_laplacian(g), basis, 1e-7)) return std::nullopt;

    try {
        return finish(g, tree, k, basis, "spanning-tree-principle");
    } catch (const Error&) {
        return std::nullopt;
    }
}

BarbellSpectrum barbell_spectrum(int n) {
    if (n < 3) throw Error("barbell_spectrum needs n >= 3");
    BarbellSpectrum out;
    const double disc = std::sqrt(static_cast<double>(n) * n + 4.0 * (n - 1));
    out.alpha = n / 2.0 - disc / 2.0;
    out.beta = n / 2.0 + disc / 2.0;

    const int total = 2 * n;
    auto bridge_mode = [&](double x) {
        Vec v(total, 0.0);
        for (int i = 0; i < n - 1; ++i) v[i] = -1.0;
        v[n - 1] = x;
        v[n] = -x;
        for (int i = n + 1; i < total; ++i) v[i] = 1.0;
        scale(1.0 / norm2(v), v);
        return v;
    };

    std::vector<Vec> cols;
    Vec values;
    cols.push_back(Vec(total, 1.0 / std::sqrt(static_cast<double>(total))));
    values.push_back(0.0);
    cols.push_back(bridge_mode(out.alpha));
    values.push_back(1.0 + out.alpha);
    // eigenvalue n block: leaf differences in each clique plus the odd
    // (1_{n-1}, 1-n, 1-n, 1_{n-1}) vector
    for (int block = 0; block < 2; ++block) {
        const int off = block == 0 ? 0 : n + 1;
        for (int i = 0; i + 1 < n - 1; ++i) {
            Vec v(total, 0.0);
            v[off + i] = 1.0;
            v[off + i + 1] = -1.0;
            cols.push_back(std::move(v));
            values.push_back(static_cast<double>(n));
        }
    }
    {
        Vec v(total, 1.0);
        v[n - 1] = 1.0 - n;
        v[n] = 1.0 - n;
        cols.push_back(std::move(v));
        values.push_back(static_cast<double>(n));
    }
    cols.push_back(bridge_mode(out.beta));
    values.push_back(1.0 + out.beta);

    // orthonormalize (the leaf-difference chains overlap)
    Matrix vectors(total, total);
    std::vector<Vec> kept;
    for (Vec& v : cols) {
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& u : kept) axpy(-dot(u, v), u, v);
        const double nv = norm2(v);
        if (nv <= 1e-10) throw Error("barbell spectrum table produced dependent vectors");
        scale(1.0 / nv, v);
        kept.push_back(std::move(v));
    }
    for (int j = 0; j < total; ++j) vectors.set_col(j, kept[j]);
    out.values = std::move(values);
    out.vectors = std::move(vectors);
    return out;
}

}  // namespace isospec
