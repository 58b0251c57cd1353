#include "isospec/eigen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "isospec/common.hpp"

namespace isospec {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSignThreshold = 1e-8;

// First entry with magnitude > 1e-8 becomes positive.
void apply_sign_convention(Vec& v) {
    for (double x : v) {
        if (std::fabs(x) > kSignThreshold) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

void apply_sign_convention(Matrix& vectors) {
    for (int j = 0; j < vectors.cols(); ++j) {
        Vec v = vectors.col(j);
        apply_sign_convention(v);
        vectors.set_col(j, v);
    }
}

double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

// One cyclic Jacobi rotation zeroing a(p, q); vt holds eigenvectors as rows.
void jacobi_rotate(Matrix& a, Matrix& vt, int p, int q, Vec& colp, Vec& colq) {
    const int n = a.rows();
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const double app = a(p, p), aqq = a(q, q);

    for (int i = 0; i < n; ++i) {
        colp[i] = a(i, p);
        colq[i] = a(i, q);
    }
    kern::rot(colp.data(), colq.data(), static_cast<size_t>(n), c, s);
    for (int i = 0; i < n; ++i) {
        a(i, p) = colp[i];
        a(p, i) = colp[i];
        a(i, q) = colq[i];
        a(q, i) = colq[i];
    }
    // exact pivot-block updates: a'pp = app - t*apq, a'qq = aqq + t*apq
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    kern::rot(vt.row(p), vt.row(q), static_cast<size_t>(n), c, s);
}

// Canonical orthonormal basis of the subspace spanned by columns
// [begin, end) of vectors: Gram-Schmidt of the projections of coordinate
// directions taken in index order.
void canonicalize_cluster(Matrix& vectors, int begin, int end) {
    const int n = vectors.rows();
    const int dim = end - begin;
    if (dim <= 1) return;

    std::vector<Vec> block;
    for (int j = begin; j < end; ++j) block.push_back(vectors.col(j));

    std::vector<Vec> result;
    for (int coord = 0; coord < n && static_cast<int>(result.size()) < dim; ++coord) {
        // projection of e_coord onto the cluster subspace
        Vec v(n, 0.0);
        for (const Vec& b : block) axpy(b[coord], b, v);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& r : result) axpy(-dot(r, v), r, v);
        const double nv = norm2(v);
        if (nv <= 1e-6) continue;
        scale(1.0 / nv, v);
        result.push_back(std::move(v));
    }
    if (static_cast<int>(result.size()) != dim)
        throw Error("cluster canonicalization failed to span the subspace");
    for (int j = 0; j < dim; ++j) vectors.set_col(begin + j, result[j]);
}

void modified_gram_schmidt(Matrix& vectors, int start = 0) {
    const int n = vectors.rows();
    for (int j = start; j < vectors.cols(); ++j) {
        Vec v = vectors.col(j);
        for (int i = 0; i < j; ++i) {
            Vec u = vectors.col(i);
            axpy(-dot(u, v), u, v);
        }
        const double nv = norm2(v);
        if (nv <= 1e-8) throw Error("basis completion became degenerate");
        scale(1.0 / nv, v);
        vectors.set_col(j, v);
        (void)n;
    }
}

std::uint64_t fnv1a_bytes(const unsigned char* p, size_t len, std::uint64_t h) {
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::vector<std::pair<int, int>> cluster_values(const Vec& sorted_values) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(sorted_values.size());
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        const bool split =
            i == n || (sorted_values[i] - sorted_values[i - 1] >
                       1e-7 * (1.0 + std::fabs(sorted_values[i - 1])));
        if (split) {
            out.emplace_back(begin, i);
            begin = i;
        }
    }
    return out;
}

bool EigenBasis::degenerate_cut(int k) const {
    if (k >= n()) return false;
    for (const auto& [b, e] : clusters)
        if (b <= k - 1 && k < e) return true;
    return false;
}

EigenBasis eig_sym_basic(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("eig_sym needs a square matrix");
    const int n = m.rows();
    if (n == 0) return EigenBasis{{}, Matrix(0, 0), {}};
    const double scale_ref = std::max(1.0, max_abs(m));
    if (asymmetry(m) > 1e-12 * scale_ref)
        throw Error("eig_sym input is not symmetric within tolerance");

    Matrix a = m;
    symmetrize(a);
    Matrix vt = Matrix::identity(n);  // rows are eigenvector candidates
    const double target = 1e-12 * std::max(frobenius(a), 1e-300);
    Vec colp(n), colq(n);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(a) <= target) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) jacobi_rotate(a, vt, p, q, colp, colq);
    }

    // sort ascending, stable in the original index on ties
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x) < a(y, y); });

    EigenBasis basis;
    basis.values.resize(n);
    basis.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        basis.values[j] = a(order[j], order[j]);
        for (int i = 0; i < n; ++i) basis.vectors(i, j) = vt(order[j], i);
    }
    return basis;
}

EigenBasis eig_sym(const Matrix& m) {
    EigenBasis basis = eig_sym_basic(m);
    basis.clusters = cluster_values(basis.values);
    for (const auto& [b, e] : basis.clusters) canonicalize_cluster(basis.vectors, b, e);
    apply_sign_convention(basis.vectors);
    return basis;
}

EigenBasis laplacian_eigbasis(const WeightedGraph& g) {
    if (!connected(g)) throw Error("graph is disconnected");
    EigenBasis basis = eig_sym(build_laplacian(g));
    if (basis.values[0] > 1e-8 || (g.n > 1 && basis.values[1] <= 1e-10))
        throw Error("Laplacian spectrum inconsistent with a connected graph");
    const double inv = 1.0 / std::sqrt(static_cast<double>(g.n));
    for (int i = 0; i < g.n; ++i) basis.vectors(i, 0) = inv;
    modified_gram_schmidt(basis.vectors, 1);  // phi_1 stays pinned exactly
    apply_sign_convention(basis.vectors);
    return basis;
}

namespace {

EigenBasis basis_from_columns(Vec values, const std::vector<Vec>& cols) {
    const int n = static_cast<int>(values.size());
    EigenBasis basis;
    basis.values = std::move(values);
    basis.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) basis.vectors.set_col(j, cols[j]);
    modified_gram_schmidt(basis.vectors);  // clean up rounding only
    apply_sign_convention(basis.vectors);
    basis.clusters = cluster_values(basis.values);
    return basis;
}

Vec unit(int n, int i) {
    Vec v(n, 0.0);
    v[i] = 1.0;
    return v;
}

Vec constant_vec(int n, double x) { return Vec(static_cast<size_t>(n), x); }

// Completes cols (the already fixed eigenvectors, all inside one eigenspace's
// complement story) to n columns by projecting coordinate directions.
void complete_with_coordinates(std::vector<Vec>& cols, int n, int want) {
    for (int coord = 0; coord < n && static_cast<int>(cols.size()) < want; ++coord) {
        Vec v = unit(n, coord);
        for (const Vec& c : cols) axpy(-dot(c, v) / dot(c, c), c, v);
        if (norm2(v) <= 1e-8) continue;
        scale(1.0 / norm2(v), v);
        cols.push_back(std::move(v));
    }
    if (static_cast<int>(cols.size()) != want)
        throw Error("coordinate completion failed");
}

EigenBasis k4_reference_basis() {
    const double r2 = std::sqrt(2.0);
    std::vector<Vec> cols = {
        constant_vec(4, 0.5),
        {1 / r2, -1 / r2, 0, 0},
        {0.5, 0.5, -0.5, -0.5},
        {0, 0, 1 / r2, -1 / r2},
    };
    return basis_from_columns({0, 4, 4, 4}, cols);
}

EigenBasis k5_reference_basis() {
    const double r2 = std::sqrt(2.0);
    const double r5 = std::sqrt(5.0);
    std::vector<Vec> cols = {
        constant_vec(5, 1 / r5),
        {1 / r2, -1 / r2, 0, 0, 0},
        {0, 0, 1 / r2, -1 / r2, 0},
        {0.5, 0.5, -0.5, -0.5, 0},
        {1 / (2 * r5), 1 / (2 * r5), 1 / (2 * r5), 1 / (2 * r5), -4 / (2 * r5)},
    };
    return basis_from_columns({0, 5, 5, 5, 5}, cols);
}

}  // namespace

EigenBasis complete_basis_star_last(int n) {
    if (n < 2) throw Error("need n >= 2");
    std::vector<Vec> cols;
    cols.push_back(constant_vec(n, 1.0 / std::sqrt(static_cast<double>(n))));
    Vec last = constant_vec(n, 1.0);
    last[n - 1] = 1.0 - n;
    scale(1.0 / std::sqrt(static_cast<double>(n) * (n - 1)), last);
    std::vector<Vec> fixed = {cols[0], last};
    complete_with_coordinates(fixed, n, n);
    for (size_t i = 2; i < fixed.size(); ++i) cols.push_back(fixed[i]);
    cols.push_back(last);
    Vec values(n, static_cast<double>(n));
    values[0] = 0.0;
    return basis_from_columns(std::move(values), cols);
}

EigenBasis complete_minus_edge_basis(int n, int center) {
    if (n < 3) throw Error("need n >= 3");
    if (center < 0 || center > n - 3) throw Error("star center must avoid the missing edge");
    const double r2 = std::sqrt(2.0);
    Vec phi2(n, 0.0);
    phi2[n - 2] = 1 / r2;
    phi2[n - 1] = -1 / r2;
    Vec last = constant_vec(n, 1.0);
    axpy(-static_cast<double>(n), unit(n, center), last);
    scale(1.0 / std::sqrt(static_cast<double>(n) * (n - 1)), last);

    std::vector<Vec> cols = {constant_vec(n, 1.0 / std::sqrt(static_cast<double>(n))), phi2};
    std::vector<Vec> fixed = {cols[0], phi2, last};
    complete_with_coordinates(fixed, n, n);
    for (size_t i = 3; i < fixed.size(); ++i) cols.push_back(fixed[i]);
    cols.push_back(last);

    Vec values(n, static_cast<double>(n));
    values[0] = 0.0;
    values[1] = static_cast<double>(n - 2);
    return basis_from_columns(std::move(values), cols);
}

namespace {

EigenBasis cube_character_basis(int d) {
    const int n = 1 << d;
    // characters phi_s(v) = (-1)^{s.v}/sqrt(n) with eigenvalue 2*popcount(s);
    // both s and the vertices are enumerated in (popcount, value) order
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [](int a, int b) {
        return std::pair(std::popcount(static_cast<unsigned>(a)), a) <
               std::pair(std::popcount(static_cast<unsigned>(b)), b);
    });
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    Vec values;
    std::vector<Vec> cols;
    for (int si = 0; si < n; ++si) {
        const int s = order[si];
        values.push_back(2.0 * std::popcount(static_cast<unsigned>(s)));
        Vec v(n);
        for (int vi = 0; vi < n; ++vi) {
            const int vertex = order[vi];
            v[vi] = (std::popcount(static_cast<unsigned>(s & vertex)) % 2 == 0) ? inv : -inv;
        }
        cols.push_back(std::move(v));
    }
    return basis_from_columns(std::move(values), cols);
}

EigenBasis wheel_canonical_basis(int rim) {
    const int n = rim + 1;
    const double pi = std::acos(-1.0);
    struct Mode {
        double value;
        Vec vec;
    };
    std::vector<Mode> modes;
    modes.push_back({0.0, constant_vec(n, 1.0 / std::sqrt(static_cast<double>(n)))});
    for (int j = 1; j <= rim / 2; ++j) {
        const double value = 3.0 - 2.0 * std::cos(2.0 * pi * j / rim);
        Vec c(n, 0.0), s(n, 0.0);
        for (int i = 0; i < rim; ++i) {
            c[i] = std::cos(2.0 * pi * j * i / rim);
            s[i] = std::sin(2.0 * pi * j * i / rim);
        }
        scale(1.0 / norm2(c), c);
        modes.push_back({value, std::move(c)});
        if (2 * j != rim) {
            scale(1.0 / norm2(s), s);
            modes.push_back({value, std::move(s)});
        }
    }
    Vec hub = constant_vec(n, -1.0);
    hub[rim] = static_cast<double>(rim);
    scale(1.0 / norm2(hub), hub);
    modes.push_back({static_cast<double>(n), std::move(hub)});

    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& a, const Mode& b) { return a.value < b.value; });
    Vec values;
    std::vector<Vec> cols;
    for (auto& m : modes) {
        values.push_back(m.value);
        cols.push_back(std::move(m.vec));
    }
    return basis_from_columns(std::move(values), cols);
}

}  // namespace

EigenBasis canonical_basis(const WeightedGraph& g, CanonicalFamily family) {
    EigenBasis basis;
    switch (family) {
        case CanonicalFamily::complete:
            if (g != complete_graph(g.n)) throw Error("graph is not the unit complete graph");
            basis = (g.n == 4)   ? k4_reference_basis()
                    : (g.n == 5) ? k5_reference_basis()
                                 : complete_basis_star_last(g.n);
            break;
        case CanonicalFamily::cube: {
            int d = 0;
            while ((1 << d) < g.n) ++d;
            if (g != cube_graph(d)) throw Error("graph is not a unit cube graph");
            basis = cube_character_basis(d);
            break;
        }
        case CanonicalFamily::wheel:
            if (g.n < 4 || g != wheel_graph(g.n - 1)) throw Error("graph is not a unit wheel graph");
            basis = wheel_canonical_basis(g.n - 1);
            break;
        case CanonicalFamily::complete_minus_edge:
            if (g != complete_minus_edge_graph(g.n))
                throw Error("graph is not the unit complete graph minus its last edge");
            basis = complete_minus_edge_basis(g.n, g.n - 3);
            break;
    }
    if (!is_eigenbasis_of(build_laplacian(g), basis, 1e-9))
        throw Error("canonical basis failed its eigen check");
    return basis;
}

Matrix project_psd(const Matrix& m) {
    const EigenBasis e = eig_sym(m);
    const int n = m.rows();
    Matrix out(n, n);
    for (int j = 0; j < n; ++j) {
        if (e.values[j] <= 0.0) continue;
        add_outer(out, e.values[j], e.vector(j), e.vector(j));
    }
    symmetrize(out);
    return out;
}

double min_eig(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    return eig_sym(m).values[0];
}

bool is_eigenbasis_of(const Matrix& l, const EigenBasis& basis, double tolerance) {
    const int n = l.rows();
    if (basis.n() != n || basis.vectors.rows() != n) return false;
    const Matrix gram = matmul_at_b(basis.vectors, basis.vectors);
    Matrix eye = Matrix::identity(n);
    if (max_abs(gram - eye) > 1e-10) return false;
    Matrix lv = matmul(l, basis.vectors);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) lv(i, j) -= basis.values[j] * basis.vectors(i, j);
    return max_abs(lv) <= tolerance * (1.0 + max_abs(l));
}

std::uint64_t basis_fingerprint(const EigenBasis& basis) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](long long v) {
        unsigned char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
        h = fnv1a_bytes(bytes, 8, h);
    };
    mix(basis.n());
    for (double v : basis.vectors.data()) mix(std::llround(v * 1e9));
    return h;
}

}  // namespace isospec
