#include "isospec/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isospec/common.hpp"

namespace isospec {

namespace {

// ---- symmetric vectorization -------------------------------------------

struct SvecIndex {
    int d = 0;
    std::vector<std::pair<int, int>> entries;  // (i, j), i <= j

    explicit SvecIndex(int dim) : d(dim) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) entries.emplace_back(i, j);
    }
    int size() const { return static_cast<int>(entries.size()); }

    Matrix unpack(const Vec& x) const {
        Matrix y(d, d);
        for (int idx = 0; idx < size(); ++idx) {
            const auto [i, j] = entries[idx];
            y(i, j) = x[idx];
            y(j, i) = x[idx];
        }
        return y;
    }
};

// row of the equality system for <Y, M> = rhs over svec coordinates:
// coeff(i,i) = M_ii, coeff(i,j) = 2 M_ij
Vec constraint_row(const SvecIndex& sv, const Matrix& m) {
    Vec row(sv.size());
    for (int idx = 0; idx < sv.size(); ++idx) {
        const auto [i, j] = sv.entries[idx];
        row[idx] = (i == j) ? m(i, i) : 2.0 * m(i, j);
    }
    return row;
}

// ---- dense least squares via Householder QR with column pivoting --------

struct LsResult {
    Vec x;
    int rank = 0;
    double residual_inf = 0.0;
};

LsResult least_squares(const std::vector<Vec>& rows, const Vec& rhs, int cols) {
    const int m = static_cast<int>(rows.size());
    const int n = cols;
    LsResult out;
    out.x.assign(n, 0.0);
    if (m == 0 || n == 0) {
        for (int r = 0; r < m; ++r)
            out.residual_inf = std::max(out.residual_inf, std::fabs(rhs[r]));
        return out;
    }

    Matrix a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rows[i][j];
    Vec b = rhs;
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;

    const int steps = std::min(m, n);
    int rank = 0;
    double r00 = 0.0;
    for (int k = 0; k < steps; ++k) {
        // pivot: remaining column with the largest norm below row k
        int best = k;
        double best_norm = -1.0;
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < m; ++i) s += a(i, j) * a(i, j);
            if (s > best_norm) {
                best_norm = s;
                best = j;
            }
        }
        if (best != k) {
            for (int i = 0; i < m; ++i) std::swap(a(i, k), a(i, best));
            std::swap(perm[k], perm[best]);
        }
        double alpha = std::sqrt(std::max(best_norm, 0.0));
        if (k == 0) r00 = alpha;
        if (alpha <= std::max(1e-10 * r00, 1e-13)) break;  // rank found
        if (a(k, k) > 0.0) alpha = -alpha;
        // Householder vector in a(k..m-1, k)
        Vec v(m - k);
        v[0] = a(k, k) - alpha;
        for (int i = k + 1; i < m; ++i) v[i - k] = a(i, k);
        const double vnorm2 = kern::nrm2sq(v.data(), v.size());
        a(k, k) = alpha;
        for (int i = k + 1; i < m; ++i) a(i, k) = 0.0;
        if (vnorm2 > 0.0) {
            for (int j = k + 1; j < n; ++j) {
                double proj = 0.0;
                for (int i = k; i < m; ++i) proj += v[i - k] * a(i, j);
                const double f = 2.0 * proj / vnorm2;
                for (int i = k; i < m; ++i) a(i, j) -= f * v[i - k];
            }
            double projb = 0.0;
            for (int i = k; i < m; ++i) projb += v[i - k] * b[i];
            const double fb = 2.0 * projb / vnorm2;
            for (int i = k; i < m; ++i) b[i] -= fb * v[i - k];
        }
        rank = k + 1;
    }

    // back substitution on the leading rank x rank triangle
    Vec z(rank, 0.0);
    for (int i = rank - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < rank; ++j) s -= a(i, j) * z[j];
        z[i] = s / a(i, i);
    }
    for (int i = 0; i < rank; ++i) out.x[perm[i]] = z[i];
    out.rank = rank;

    for (int i = 0; i < m; ++i) {
        const double ri = kern::dot(rows[i].data(), out.x.data(), out.x.size()) - rhs[i];
        out.residual_inf = std::max(out.residual_inf, std::fabs(ri));
    }
    return out;
}

// ---- analytic ray test ---------------------------------------------------

// When c_t is a multiple of c_s (or either vanishes), <Y, M_st> over the PSD
// cone is a ray; returns that check's verdict for the target -F_st.
std::optional<std::string> ray_test(const SpectralStructure& s, int u, int v, double feas_tol) {
    const Vec cs = s.coeff_vector(u);
    const Vec ct = s.coeff_vector(v);
    const double ns = norm2(cs), nt = norm2(ct);
    const double target = -s.fixed(u, v);
    const double eps = 1e-10;
    if (ns <= eps || nt <= eps) {
        if (std::fabs(target) > feas_tol)
            return "coefficient vector vanishes for (" + std::to_string(u + 1) + "," +
                   std::to_string(v + 1) + ") but the fixed entry does not";
        return std::nullopt;
    }
    const double gamma = dot(cs, ct) / (ns * ns);
    Vec diff = ct;
    axpy(-gamma, cs, diff);
    if (norm2(diff) > eps * nt) return std::nullopt;  // not colinear, test silent
    const bool reachable = (gamma < 0.0) ? target <= feas_tol : target >= -feas_tol;
    if (!reachable)
        return "colinear coefficient vectors confine (" + std::to_string(u + 1) + "," +
               std::to_string(v + 1) + ") to the wrong side of zero";
    return std::nullopt;
}

struct ConstraintSet {
    Matrix m;          // pair matrix
    double norm2 = 0;  // <M, M>
    double rhs = 0;    // -F_st
    bool equality = false;
};

}  // namespace

const char* to_string(FeasibilityStatus s) {
    switch (s) {
        case FeasibilityStatus::found: return "found";
        case FeasibilityStatus::infeasible: return "infeasible-by-analytic-test";
        case FeasibilityStatus::not_found: return "not-found-at-budget";
    }
    return "?";
}

FeasibilityProblem make_problem(const SpectralStructure& s,
                                const std::vector<VertexPair>& deletions) {
    FeasibilityProblem p;
    p.structure = &s;
    for (auto [u, v] : s.non_edge_pairs) p.forced_zero.push_back({u, v});
    for (auto d : deletions) {
        auto [u, v] = d;
        if (u > v) std::swap(u, v);
        if (!s.g.has_edge(u, v)) throw Error("requested deletion is not an edge");
        p.forced_zero.push_back({u, v});
    }
    for (auto [u, v] : s.edge_pairs) {
        const bool deleted = std::find(deletions.begin(), deletions.end(), VertexPair{u, v}) !=
                                 deletions.end() ||
                             std::find(deletions.begin(), deletions.end(), VertexPair{v, u}) !=
                                 deletions.end();
        if (!deleted) p.inequality_pairs.push_back({u, v});
    }
    return p;
}

FeasibilityResult solve_feasibility(const FeasibilityProblem& p, const SolverOptions& opt) {
    const SpectralStructure& s = *p.structure;
    const int d = s.tail_dim();
    FeasibilityResult out;

    // no degrees of freedom: the answer is written on F
    if (d == 0) {
        for (auto [u, v] : p.forced_zero)
            if (std::fabs(s.fixed(u, v)) > opt.feas_tol) {
                out.status = FeasibilityStatus::infeasible;
                out.reason = "no free variables and a forced entry of F is nonzero";
                return out;
            }
        for (auto [u, v] : p.inequality_pairs)
            if (s.fixed(u, v) > opt.feas_tol) {
                out.status = FeasibilityStatus::infeasible;
                out.reason = "no free variables and an edge entry of F is positive";
                return out;
            }
        out.status = FeasibilityStatus::found;
        out.y = Matrix(0, 0);
        out.reason = "k = n leaves a single point";
        return out;
    }

    // stage 1: per-pair ray test
    for (auto [u, v] : p.forced_zero)
        if (auto verdict = ray_test(s, u, v, opt.feas_tol)) {
            out.status = FeasibilityStatus::infeasible;
            out.reason = *verdict;
            return out;
        }

    // stage 2: consistency of the equality system
    const SvecIndex sv(d);
    std::vector<Vec> rows;
    Vec rhs;
    for (auto [u, v] : p.forced_zero) {
        rows.push_back(constraint_row(sv, s.pair_matrix(u, v)));
        rhs.push_back(-s.fixed(u, v));
    }
    const LsResult ls = least_squares(rows, rhs, sv.size());
    const double rhs_scale = std::max(1.0, max_abs(rhs));
    if (ls.residual_inf > 1e-6 * rhs_scale) {
        out.status = FeasibilityStatus::infeasible;
        out.reason = "forced-zero equations are inconsistent (least-squares residual " +
                     format_double(ls.residual_inf) + ")";
        return out;
    }
    const bool consistent = ls.residual_inf <= 1e-8 * rhs_scale;
    if (consistent && ls.rank == sv.size()) {
        // unique affine point: check it outright
        Matrix y = sv.unpack(ls.x);
        const MembershipReport r = membership(s, y, opt.feas_tol);
        bool forced_ok = true;
        const Matrix l = laplacian_from_y(s, y);
        for (auto [u, v] : p.forced_zero)
            forced_ok = forced_ok && std::fabs(l(u, v)) <= opt.feas_tol;
        if (r.is_member && forced_ok) {
            out.status = FeasibilityStatus::found;
            out.y = std::move(y);
            out.reason = "unique affine solution is feasible";
            return out;
        }
        out.status = FeasibilityStatus::infeasible;
        out.reason = "the equality system pins a unique point and it violates PSD or an edge sign";
        return out;
    }

    // stage 3: Dykstra from the graph's own Y. The forced-zero equalities
    // are projected jointly (one affine subspace, Gram prefactored); the
    // edge inequalities keep their closed-form halfspace projections.
    std::vector<ConstraintSet> equalities, halfspaces;
    for (auto [u, v] : p.forced_zero) {
        ConstraintSet c{s.pair_matrix(u, v), s.pair_matrix_norm2(u, v), -s.fixed(u, v), true};
        if (c.norm2 > 1e-24) equalities.push_back(std::move(c));
    }
    for (auto [u, v] : p.inequality_pairs) {
        ConstraintSet c{s.pair_matrix(u, v), s.pair_matrix_norm2(u, v), -s.fixed(u, v), false};
        if (c.norm2 > 1e-24) halfspaces.push_back(std::move(c));
    }

    const auto frob = [d](const Matrix& a, const Matrix& b) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i)
            acc += kern::dot(a.row(i), b.row(i), static_cast<size_t>(d));
        return acc;
    };

    // independent subset of the equality representers (Frobenius GS); the
    // least-squares stage already certified the dropped rows consistent
    std::vector<int> picked;
    {
        std::vector<Matrix> ortho;
        for (size_t i = 0; i < equalities.size(); ++i) {
            Matrix v = equalities[i].m;
            for (int pass = 0; pass < 2; ++pass)
                for (const Matrix& q : ortho) v -= frob(q, v) * q;
            const double nv = std::sqrt(std::max(frob(v, v), 0.0));
            if (nv <= 1e-10 * std::sqrt(equalities[i].norm2)) continue;
            v *= 1.0 / nv;
            ortho.push_back(std::move(v));
            picked.push_back(static_cast<int>(i));
        }
    }
    const int r = static_cast<int>(picked.size());
    Matrix gram_lu(r, r);
    std::vector<int> gram_piv(r);
    {
        Matrix gram(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j <= i; ++j)
                gram(i, j) = gram(j, i) = frob(equalities[picked[i]].m, equalities[picked[j]].m);
        // LU with partial pivoting, factored once
        gram_lu = gram;
        for (int i = 0; i < r; ++i) gram_piv[i] = i;
        for (int col = 0; col < r; ++col) {
            int bestrow = col;
            for (int i = col + 1; i < r; ++i)
                if (std::fabs(gram_lu(i, col)) > std::fabs(gram_lu(bestrow, col))) bestrow = i;
            if (bestrow != col) {
                for (int j = 0; j < r; ++j) std::swap(gram_lu(col, j), gram_lu(bestrow, j));
                std::swap(gram_piv[col], gram_piv[bestrow]);
            }
            if (std::fabs(gram_lu(col, col)) < 1e-14) throw Error("equality Gram went singular");
            for (int i = col + 1; i < r; ++i) {
                gram_lu(i, col) /= gram_lu(col, col);
                for (int j = col + 1; j < r; ++j)
                    gram_lu(i, j) -= gram_lu(i, col) * gram_lu(col, j);
            }
        }
    }
    auto gram_solve = [&](Vec c) {
        Vec pc(r);
        for (int i = 0; i < r; ++i) pc[i] = c[gram_piv[i]];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < i; ++j) pc[i] -= gram_lu(i, j) * pc[j];
        for (int i = r - 1; i >= 0; --i) {
            for (int j = i + 1; j < r; ++j) pc[i] -= gram_lu(i, j) * pc[j];
            pc[i] /= gram_lu(i, i);
        }
        return pc;
    };
    auto project_equalities = [&](Matrix& y) {
        if (r == 0) return;
        Vec c(r);
        for (int i = 0; i < r; ++i)
            c[i] = frob(equalities[picked[i]].m, y) - equalities[picked[i]].rhs;
        const Vec w = gram_solve(std::move(c));
        for (int i = 0; i < r; ++i) y -= w[i] * equalities[picked[i]].m;
    };

    auto residual_of = [&](const Matrix& y, double psd_violation) {
        double res = psd_violation;
        for (const auto& c : equalities) res = std::max(res, std::fabs(frob(c.m, y) - c.rhs));
        for (const auto& c : halfspaces) res = std::max(res, frob(c.m, y) - c.rhs);
        return res;
    };

    Matrix x = s.own_y();
    {
        const double start_res = residual_of(x, std::max(0.0, -min_eig(x)));
        if (start_res <= opt.converge_tol) {
            out.status = FeasibilityStatus::found;
            out.y = std::move(x);
            out.reason = "start point already feasible";
            out.final_residual = start_res;
            return out;
        }
    }

    std::vector<Matrix> corrections(halfspaces.size() + 2, Matrix(d, d));
    double best = std::numeric_limits<double>::infinity();
    double window_best = best;
    for (long cycle = 1; cycle <= opt.budget; ++cycle) {
        {
            x += corrections[0];
            Matrix z = x;
            project_equalities(z);
            corrections[0] = x - z;
            x = std::move(z);
        }
        for (size_t i = 0; i < halfspaces.size(); ++i) {
            x += corrections[i + 1];
            const double step =
                std::max(0.0, (frob(halfspaces[i].m, x) - halfspaces[i].rhs) / halfspaces[i].norm2);
            corrections[i + 1] = x;
            if (step != 0.0) x -= step * halfspaces[i].m;
            corrections[i + 1] -= x;
        }
        {
            x += corrections.back();
            const EigenBasis e = eig_sym_basic(x);
            Matrix proj(d, d);
            for (int j = 0; j < d; ++j) {
                if (e.values[j] <= 0.0) continue;
                add_outer(proj, e.values[j], e.vector(j), e.vector(j));
            }
            symmetrize(proj);
            corrections.back() = x - proj;
            x = std::move(proj);
        }

        const double res = residual_of(x, 0.0);
        out.iterations = cycle;
        out.final_residual = res;
        if (res <= opt.converge_tol) {
            out.status = FeasibilityStatus::found;
            out.y = std::move(x);
            out.reason = "projection iteration converged";
            return out;
        }
        best = std::min(best, res);
        if (cycle % opt.stall_window == 0) {
            if (best > window_best * opt.stall_factor && best > 100.0 * opt.converge_tol) {
                out.status = FeasibilityStatus::not_found;
                out.reason = "projection residual stalled at " + format_double(best);
                return out;
            }
            window_best = best;
        }
    }
    out.status = FeasibilityStatus::not_found;
    out.reason = "iteration budget exhausted";
    return out;
}

}  // namespace isospec
