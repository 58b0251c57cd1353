#include "isospec/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isospec/common.hpp"
#include "isospec/rng.hpp"

namespace isospec {

double QPolyhedron::max_row_violation(const Vec& w) const {
    double r = 0.0;
    for (size_t i = 0; i < rows.size(); ++i)
        r = std::max(r, std::fabs(dot(rows[i], w) - rhs[i]));
    return r;
}

Vec weights_of(const WeightedGraph& g) {
    Vec w;
    w.reserve(g.edges.size());
    for (const auto& e : g.edges) w.push_back(e.w);
    return w;
}

Matrix laplacian_from_weights(const WeightedGraph& g, const Vec& w) {
    if (w.size() != g.edges.size()) throw Error("weight vector length mismatch");
    Matrix l(g.n, g.n);
    for (size_t i = 0; i < w.size(); ++i) {
        const auto& e = g.edges[i];
        l(e.u, e.v) -= w[i];
        l(e.v, e.u) -= w[i];
        l(e.u, e.u) += w[i];
        l(e.v, e.v) += w[i];
    }
    return l;
}

QPolyhedron build_qpolyhedron(const WeightedGraph& g, int k, const EigenBasis& basis) {
    if (k < 2 || k > g.n) throw Error("k must satisfy 2 <= k <= n");
    if (!connected(g)) throw Error("graph is disconnected");
    QPolyhedron q;
    q.g = g;
    q.k = k;
    q.basis_fingerprint = basis_fingerprint(basis);
    auto edge_coeff = [&](int i, int j) {
        Vec row(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e) {
            const auto& ed = g.edges[e];
            row[e] = (basis.vectors(ed.u, i) - basis.vectors(ed.v, i)) *
                     (basis.vectors(ed.u, j) - basis.vectors(ed.v, j));
        }
        return row;
    };
    // rows for phi_1 are identically satisfied and omitted
    for (int i = 1; i < k; ++i) {
        q.rows.push_back(edge_coeff(i, i));
        q.rhs.push_back(basis.values[i]);
    }
    for (int i = 1; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            q.rows.push_back(edge_coeff(i, j));
            q.rhs.push_back(0.0);
        }
    if (q.max_row_violation(weights_of(g)) > 1e-9)
        throw Error("the graph's own weights violate the rows: basis inconsistent with g");
    return q;
}

namespace {

// Dense LU solve with partial pivoting; returns false when singular.
bool lu_solve(Matrix a, Vec b, Vec& x) {
    const int n = a.rows();
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int i = col + 1; i < n; ++i)
            if (std::fabs(a(i, col)) > std::fabs(a(best, col))) best = i;
        if (std::fabs(a(best, col)) < 1e-12) return false;
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(best, j));
            std::swap(b[col], b[best]);
        }
        for (int i = col + 1; i < n; ++i) {
            const double f = a(i, col) / a(col, col);
            if (f == 0.0) continue;
            a(i, col) = 0.0;
            for (int j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
            b[i] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return true;
}

// Rank and an orthonormal-ish triangular factor of the columns indexed by
// cols; if rank-deficient, produces a null-space vector over those columns.
struct ColumnRank {
    int rank = 0;
    std::optional<Vec> null_vector;  // length cols.size()
};

ColumnRank column_rank(const std::vector<Vec>& matrix_cols) {
    const int s = static_cast<int>(matrix_cols.size());
    if (s == 0) return {0, std::nullopt};
    // modified Gram-Schmidt: reduce each column against the accepted ones;
    // the first dependent column yields a null vector
    std::vector<Vec> q;       // accepted orthonormal columns
    std::vector<int> q_src;   // their source indices
    for (int j = 0; j < s; ++j) {
        Vec v = matrix_cols[j];
        for (int pass = 0; pass < 2; ++pass)
            for (size_t i = 0; i < q.size(); ++i) axpy(-dot(q[i], v), q[i], v);
        const double nv = norm2(v);
        const double scale_ref = std::max(1.0, norm2(matrix_cols[j]));
        if (nv > 1e-10 * scale_ref) {
            scale(1.0 / nv, v);
            q.push_back(std::move(v));
            q_src.push_back(j);
            continue;
        }
        // dependent: solve for matrix_cols[j] as a combination of the
        // accepted source columns through the (small) Gram system
        Vec null(s, 0.0);
        null[j] = -1.0;
        const int r = static_cast<int>(q.size());
        Matrix gram(r, r);
        Vec rhs(r, 0.0);
        for (int a = 0; a < r; ++a) {
            for (int b2 = 0; b2 < r; ++b2)
                gram(a, b2) = dot(matrix_cols[q_src[a]], matrix_cols[q_src[b2]]);
            rhs[a] = dot(matrix_cols[q_src[a]], matrix_cols[j]);
        }
        Vec x;
        if (r > 0 && !lu_solve(gram, rhs, x)) return {static_cast<int>(q.size()), std::nullopt};
        for (int a = 0; a < r; ++a) null[q_src[a]] = x.empty() ? 0.0 : x[a];
        return {static_cast<int>(q.size()), std::move(null)};
    }
    return {static_cast<int>(q.size()), std::nullopt};
}

}  // namespace

LpResult lp_vertex(const QPolyhedron& q, const Vec& objective) {
    const int n = q.variables();
    if (static_cast<int>(objective.size()) != n) throw Error("objective length mismatch");

    // drop dependent rows (the cross rows can vanish identically)
    std::vector<Vec> rows;
    Vec rhs;
    {
        std::vector<Vec> kept_t;  // transposed view for rank checks
        for (size_t i = 0; i < q.rows.size(); ++i) {
            std::vector<Vec> trial = kept_t;
            trial.push_back(q.rows[i]);
            if (column_rank(trial).rank == static_cast<int>(trial.size())) {
                kept_t = std::move(trial);
                rows.push_back(q.rows[i]);
                rhs.push_back(q.rhs[i]);
            }
        }
    }
    const int m = static_cast<int>(rows.size());

    Vec w = weights_of(q.g);
    auto col_of = [&](int j) {
        Vec c(m);
        for (int i = 0; i < m; ++i) c[i] = rows[i][j];
        return c;
    };

    // purify w(G) to a basic feasible solution
    for (;;) {
        std::vector<int> support;
        for (int j = 0; j < n; ++j)
            if (w[j] > 0.0) support.push_back(j);
        std::vector<Vec> cols;
        for (int j : support) cols.push_back(col_of(j));
        const ColumnRank cr = column_rank(cols);
        if (!cr.null_vector) break;
        Vec dir(n, 0.0);
        for (size_t i = 0; i < support.size(); ++i) dir[support[i]] = (*cr.null_vector)[i];
        double cd = dot(objective, dir);
        if (cd > 0.0) {
            for (double& x : dir) x = -x;
            cd = -cd;
        }
        double step = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (dir[j] < -1e-12) step = std::min(step, w[j] / -dir[j]);
        if (!std::isfinite(step)) {
            if (cd < -1e-9) return {LpResult::Status::unbounded, {}, 0.0};
            for (double& x : dir) x = -x;  // the opposite direction must block
            step = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j)
                if (dir[j] < -1e-12) step = std::min(step, w[j] / -dir[j]);
            if (!std::isfinite(step)) throw Error("null direction without any blocking bound");
        }
        int leaving = -1;
        for (int j = 0; j < n; ++j)
            if (dir[j] < -1e-12 && w[j] / -dir[j] <= step * (1.0 + 1e-12)) {
                leaving = j;
                break;
            }
        for (int j = 0; j < n; ++j) w[j] = std::max(0.0, w[j] + step * dir[j]);
        if (leaving >= 0) w[leaving] = 0.0;
    }

    // basis: support columns padded to a full row-rank basis
    std::vector<int> basis;
    for (int j = 0; j < n; ++j)
        if (w[j] > 0.0) basis.push_back(j);
    for (int j = 0; j < n && static_cast<int>(basis.size()) < m; ++j) {
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        std::vector<Vec> cols;
        for (int b : basis) cols.push_back(col_of(b));
        cols.push_back(col_of(j));
        if (column_rank(cols).rank == static_cast<int>(cols.size())) basis.push_back(j);
    }
    if (static_cast<int>(basis.size()) != m) throw Error("failed to complete an LP basis");
    std::sort(basis.begin(), basis.end());

    // primal simplex with Bland's rule
    bool optimal = false;
    for (long iter = 0; iter < 100000 && !optimal; ++iter) {
        Matrix ab(m, m);
        for (int i = 0; i < m; ++i)
            for (int jidx = 0; jidx < m; ++jidx) ab(i, jidx) = rows[i][basis[jidx]];
        // duals: ab^T y = c_B
        Vec cb(m);
        for (int i = 0; i < m; ++i) cb[i] = objective[basis[i]];
        Vec y;
        if (!lu_solve(ab.transposed(), cb, y)) throw Error("singular LP basis");
        int entering = -1;
        for (int j = 0; j < n; ++j) {
            if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
            const Vec aj = col_of(j);
            const double reduced = objective[j] - dot(y, aj);
            if (reduced < -1e-9) {
                entering = j;
                break;  // Bland: smallest index
            }
        }
        if (entering < 0) {
            optimal = true;
            continue;
        }
        Vec direction;
        if (!lu_solve(ab, col_of(entering), direction)) throw Error("singular LP basis");
        double step = std::numeric_limits<double>::infinity();
        int leaving = -1;
        for (int i = 0; i < m; ++i) {
            if (direction[i] <= 1e-12) continue;
            const double ratio = w[basis[i]] / direction[i];
            if (ratio < step - 1e-15 ||
                (ratio <= step + 1e-15 && (leaving < 0 || basis[i] < basis[leaving]))) {
                step = ratio;
                leaving = i;
            }
        }
        if (leaving < 0) return {LpResult::Status::unbounded, {}, 0.0};
        for (int i = 0; i < m; ++i) w[basis[i]] = std::max(0.0, w[basis[i]] - step * direction[i]);
        w[basis[leaving]] = 0.0;
        w[entering] = step;
        basis[leaving] = entering;
        std::sort(basis.begin(), basis.end());
    }
    if (!optimal) throw Error("simplex exceeded its pivot budget");

    LpResult out;
    out.status = LpResult::Status::optimal;
    out.w = w;
    out.objective = dot(objective, w);
    return out;
}

QCertificate verify_qform(const WeightedGraph& g, const Vec& w, int k, const EigenBasis& basis) {
    if (w.size() != g.edges.size()) throw Error("weight vector length mismatch");
    if (k < 2 || k > g.n) throw Error("k must satisfy 2 <= k <= n");
    QCertificate cert;
    cert.w = w;
    bool nonneg = true;
    for (double x : w) nonneg = nonneg && x >= -1e-12;
    const Matrix l = laplacian_from_weights(g, w);
    for (int i = 1; i < k; ++i) {
        const Vec li = matvec(l, basis.vector(i));
        for (int j = i; j < k; ++j) {
            const double want = (i == j) ? basis.values[i] : 0.0;
            cert.qform_residual =
                std::max(cert.qform_residual, std::fabs(dot(li, basis.vector(j)) - want));
        }
    }
    const double zero_thresh = zero_edge_threshold(g);
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] <= zero_thresh) cert.zero_edges.push_back({g.edges[i].u, g.edges[i].v});
    cert.eigenreport = eig_sym(l).values;
    cert.connected = g.n >= 2 && cert.eigenreport[1] > 1e-8;
    // det of the principal submatrix dropping the last row/column, kept for
    // reporting alongside the eigenvalue-based connectivity test
    {
        Matrix a(g.n - 1, g.n - 1);
        for (int i = 0; i + 1 < g.n; ++i)
            for (int j = 0; j + 1 < g.n; ++j) a(i, j) = l(i, j);
        double det = 1.0;
        for (int col = 0; col < a.rows(); ++col) {
            int best = col;
            for (int i = col + 1; i < a.rows(); ++i)
                if (std::fabs(a(i, col)) > std::fabs(a(best, col))) best = i;
            if (std::fabs(a(best, col)) < 1e-300) {
                det = 0.0;
                break;
            }
            if (best != col) {
                det = -det;
                for (int j = 0; j < a.rows(); ++j) std::swap(a(col, j), a(best, j));
            }
            det *= a(col, col);
            for (int i = col + 1; i < a.rows(); ++i) {
                const double f = a(i, col) / a(col, col);
                for (int j = col; j < a.rows(); ++j) a(i, j) -= f * a(col, j);
            }
        }
        cert.det_reduced = det;
    }
    cert.passes = nonneg && cert.qform_residual <= tol::feasibility;
    return cert;
}

ContainmentReport containment_check(const SpectralStructure& s, const QPolyhedron& q,
                                    const std::vector<Matrix>& known_feasible, int samples,
                                    std::uint64_t seed) {
    if (graph_hash(q.g) != graph_hash(s.g) || q.k != s.k)
        throw Error("containment check needs matching graph and k");
    std::vector<Matrix> points = known_feasible;
    points.push_back(s.own_y());
    ContainmentReport rep;
    Rng rng(seed);
    for (int it = 0; it < samples; ++it) {
        Vec theta(points.size());
        double total = 0.0;
        for (double& t : theta) {
            t = -std::log(1.0 - rng.next_unit());
            total += t;
        }
        Matrix y(s.tail_dim(), s.tail_dim());
        for (size_t i = 0; i < points.size(); ++i) y += (theta[i] / total) * points[i];
        const Matrix l = laplacian_from_y(s, y);
        Vec w(q.g.edges.size());
        for (size_t e = 0; e < w.size(); ++e) w[e] = -l(q.g.edges[e].u, q.g.edges[e].v);
        rep.max_violation = std::max(rep.max_violation, q.max_row_violation(w));
        ++rep.samples;
    }
    rep.contained = rep.max_violation <= tol::feasibility;
    return rep;
}

}  // namespace isospec
