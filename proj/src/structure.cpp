#include "isospec/structure.hpp"

#include <cmath>

#include "isospec/common.hpp"

namespace isospec {

Matrix SpectralStructure::pair_matrix(int s, int t) const {
    const int d = tail_dim();
    Matrix m(d, d);
    const double* cs = tail.row(s);
    const double* ct = tail.row(t);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = 0.5 * (cs[i] * ct[j] + ct[i] * cs[j]);
    return m;
}

double SpectralStructure::pair_value(const Matrix& y, int s, int t) const {
    const int d = tail_dim();
    const double* cs = tail.row(s);
    const double* ct = tail.row(t);
    double acc = 0.0;
    for (int i = 0; i < d; ++i) acc += cs[i] * kern::dot(y.row(i), ct, static_cast<size_t>(d));
    return acc;
}

double SpectralStructure::pair_matrix_norm2(int s, int t) const {
    const int d = tail_dim();
    const double* cs = tail.row(s);
    const double* ct = tail.row(t);
    const double nss = kern::dot(cs, cs, static_cast<size_t>(d));
    const double ntt = kern::dot(ct, ct, static_cast<size_t>(d));
    const double nst = kern::dot(cs, ct, static_cast<size_t>(d));
    return 0.5 * (nss * ntt + nst * nst);
}

Matrix SpectralStructure::own_y() const {
    const int d = tail_dim();
    Matrix y(d, d);
    for (int i = 0; i < d; ++i) y(i, i) = basis.values[k + i] - cut_value;
    return y;
}

double MembershipReport::max_inequality() const {
    double r = 0.0;
    for (const auto& [pair, v] : inequality_residuals) r = std::max(r, v);
    return r;
}

double MembershipReport::max_equality() const {
    double r = 0.0;
    for (const auto& [pair, v] : equality_residuals) r = std::max(r, v);
    return r;
}

namespace {

Matrix fixed_matrix(const EigenBasis& basis, int k) {
    const int n = basis.n();
    Matrix f(n, n);
    for (int j = 1; j < n; ++j) {
        const double value = (j < k) ? basis.values[j] : basis.values[k - 1];
        if (value == 0.0) continue;
        add_outer(f, value, basis.vector(j), basis.vector(j));
    }
    symmetrize(f);
    return f;
}

}  // namespace

SpectralStructure build_structure(const WeightedGraph& g, int k, const EigenBasis& basis) {
    if (k < 2 || k > g.n) throw Error("k must satisfy 2 <= k <= n");
    if (!connected(g)) throw Error("graph is disconnected");
    const Matrix l = build_laplacian(g);
    if (!is_eigenbasis_of(l, basis, 1e-7)) throw Error("basis is not an eigenbasis of the graph Laplacian");

    SpectralStructure s;
    s.g = g;
    s.k = k;
    s.basis = basis;
    s.cut_value = basis.values[k - 1];
    s.fixed = fixed_matrix(basis, k);
    s.tail = Matrix(g.n, g.n - k);
    for (int j = k; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) s.tail(i, j - k) = basis.vectors(i, j);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            (g.has_edge(u, v) ? s.edge_pairs : s.non_edge_pairs).emplace_back(u, v);
    s.degenerate_cut = basis.degenerate_cut(k);
    return s;
}

Matrix laplacian_from_y(const SpectralStructure& s, const Matrix& y) {
    const int d = s.tail_dim();
    if (y.rows() != d || y.cols() != d) throw Error("Y has the wrong dimension");
    if (d == 0) return s.fixed;
    Matrix l = s.fixed + matmul(matmul(s.tail, y), s.tail.transposed());
    symmetrize(l);
    return l;
}

std::pair<Matrix, double> y_from_laplacian(const SpectralStructure& s, const Matrix& l) {
    if (l.rows() != s.g.n || l.cols() != s.g.n) throw Error("L has the wrong dimension");
    Matrix diff = l - s.fixed;
    Matrix y = matmul_at_b(s.tail, matmul(diff, s.tail));
    symmetrize(y);
    const Matrix back = laplacian_from_y(s, y);
    return {y, max_abs(l - back)};
}

double zero_edge_threshold(const WeightedGraph& g) {
    return tol::zero_edge_rel * std::max(1.0, g.max_weight());
}

MembershipReport membership(const SpectralStructure& s, const Matrix& y, double feas_tol) {
    MembershipReport r;
    r.psd_violation = std::max(0.0, -min_eig(y));
    const Matrix l = laplacian_from_y(s, y);
    const double zero_thresh = zero_edge_threshold(s.g);
    for (const auto& [u, v] : s.edge_pairs) {
        r.inequality_residuals[{u, v}] = l(u, v);
        if (std::fabs(l(u, v)) <= zero_thresh) r.zero_edges.push_back({u, v});
    }
    for (const auto& [u, v] : s.non_edge_pairs) r.equality_residuals[{u, v}] = std::fabs(l(u, v));
    r.is_member = r.psd_violation <= tol::psd && r.max_inequality() <= feas_tol &&
                  r.max_equality() <= feas_tol;
    return r;
}

WeightedGraph subgraph_from_laplacian(const WeightedGraph& g, const Matrix& l) {
    const double zero_thresh = zero_edge_threshold(g);
    std::vector<Edge> edges;
    for (const auto& e : g.edges) {
        const double w = -l(e.u, e.v);
        if (std::fabs(w) <= zero_thresh) continue;
        if (w < 0.0) throw Error("matrix entry implies a negative edge weight");
        edges.push_back({e.u, e.v, w});
    }
    return make_graph(g.n, std::move(edges));
}

VerifyDiagnostics verify_isospectral(const WeightedGraph& g, const WeightedGraph& candidate,
                                     int k, const EigenBasis& basis) {
    if (candidate.n != g.n) throw Error("vertex counts differ");
    for (const auto& e : candidate.edges)
        if (!g.has_edge(e.u, e.v)) throw Error("candidate has an edge absent from the original graph");
    if (k < 1 || k > g.n) throw Error("k out of range");

    VerifyDiagnostics d;
    const Matrix lc = build_laplacian(candidate);
    const int n = g.n;

    for (int i = 0; i < k; ++i) {
        Vec phi = basis.vector(i);
        Vec res = matvec(lc, phi);
        axpy(-basis.values[i], phi, res);
        d.max_eigenpair_residual = std::max(d.max_eigenpair_residual, norm2(res));
    }
    if (d.max_eigenpair_residual > tol::verify) {
        d.failure = "first-k eigenpair residual too large";
        return d;
    }

    // recover Y and require PSD + exact reconstruction (affine-span check)
    const Matrix f = fixed_matrix(basis, k);
    Matrix tail(n, n - k);
    for (int j = k; j < n; ++j)
        for (int i = 0; i < n; ++i) tail(i, j - k) = basis.vectors(i, j);
    Matrix diff = lc - f;
    Matrix y = matmul_at_b(tail, matmul(diff, tail));
    symmetrize(y);
    d.psd_violation = std::max(0.0, -min_eig(y));
    Matrix back = f;
    if (n - k > 0) back += matmul(matmul(tail, y), tail.transposed());
    d.reconstruction_residual = max_abs(lc - back);
    if (d.psd_violation > tol::psd) {
        d.failure = "recovered Y is not PSD";
        return d;
    }
    if (d.reconstruction_residual > tol::verify) {
        d.failure = "candidate Laplacian is outside the affine span";
        return d;
    }
    d.verified = true;
    return d;
}

}  // namespace isospec
