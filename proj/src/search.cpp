#include "isospec/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isospec/common.hpp"

namespace isospec {

SparsifierCertificate certificate_from_y(const SpectralStructure& s, const Matrix& y) {
    SparsifierCertificate cert;
    cert.ref = {graph_hash(s.g), s.k, basis_fingerprint(s.basis), s.degenerate_cut};
    cert.y = y;
    cert.l = laplacian_from_y(s, y);
    const MembershipReport r = membership(s, y);
    cert.deleted_edges = r.zero_edges;
    cert.psd_residual = r.psd_violation;
    cert.inequality_residual = r.max_inequality();
    cert.equality_residual = r.max_equality();
    if (s.degenerate_cut)
        cert.warnings.push_back(
            "basis-dependent: lambda_k equals lambda_{k+1}, the certificate is tied to this eigenbasis");
    try {
        const WeightedGraph candidate = subgraph_from_laplacian(s.g, cert.l);
        cert.verified = verify_isospectral(s.g, candidate, s.k, s.basis).verified;
    } catch (const Error&) {
        cert.verified = false;
    }
    return cert;
}

EdgeOrder edge_order_from_string(const std::string& name) {
    if (name == "slack") return EdgeOrder::slack;
    if (name == "lex") return EdgeOrder::lex;
    if (name == "weight") return EdgeOrder::weight;
    throw Error("unknown edge order '" + name + "' (want slack|lex|weight)");
}

std::vector<VertexPair> ordered_edges(const SpectralStructure& s, EdgeOrder order) {
    std::vector<VertexPair> edges = s.edge_pairs;
    switch (order) {
        case EdgeOrder::lex:
            break;  // edge_pairs are already lexicographic
        case EdgeOrder::slack:
            std::stable_sort(edges.begin(), edges.end(), [&](VertexPair a, VertexPair b) {
                return -s.fixed(a.first, a.second) > -s.fixed(b.first, b.second);
            });
            break;
        case EdgeOrder::weight:
            // lightest edges first, ties lexicographic
            std::stable_sort(edges.begin(), edges.end(), [&](VertexPair a, VertexPair b) {
                const double wa = s.g.edges[*s.g.edge_index(a.first, a.second)].w;
                const double wb = s.g.edges[*s.g.edge_index(b.first, b.second)].w;
                return wa < wb;
            });
            break;
    }
    return edges;
}

GreedyResult greedy_sparsify(const SpectralStructure& s, EdgeOrder order,
                             const SolverOptions& opt) {
    GreedyResult out;
    std::vector<VertexPair> accepted;
    Matrix best_y = s.own_y();
    for (const VertexPair& e : ordered_edges(s, order)) {
        std::vector<VertexPair> tentative = accepted;
        tentative.push_back(e);
        const FeasibilityResult r = solve_feasibility(make_problem(s, tentative), opt);
        out.attempts.emplace_back(e, r.status);
        if (r.status == FeasibilityStatus::found) {
            accepted = std::move(tentative);
            best_y = *r.y;
        }
    }
    out.accepted = accepted;
    out.certificate = certificate_from_y(s, best_y);
    return out;
}

std::optional<int> la_heuristic_max_k(int n, long long m) {
    if (n < 2) throw Error("need n >= 2");
    auto binom2 = [](long long x) { return x < 2 ? 0LL : x * (x - 1) / 2; };
    for (int k = n; k >= 2; --k)
        if (m > binom2(n) - binom2(n - k + 1)) return k;
    return std::nullopt;
}

std::optional<SparsifierCertificate> rank_one_sparsifier(const WeightedGraph& g,
                                                         const EigenBasis& basis) {
    const int n = g.n;
    if (g.edge_count() != n * (n - 1) / 2) throw Error("rank-one construction needs a complete graph");
    const Vec phi = basis.vector(n - 1);
    int nonzero = 0;
    for (double x : phi)
        if (std::fabs(x) > 1e-8) ++nonzero;
    if (nonzero < 3) return std::nullopt;

    const Matrix l = build_laplacian(g);
    double c = std::numeric_limits<double>::infinity();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double p = phi[u] * phi[v];
            if (p > 1e-12) c = std::min(c, -l(u, v) / p);
        }
    if (!std::isfinite(c)) return std::nullopt;

    const SpectralStructure s = build_structure(g, n - 1, basis);
    Matrix lh = l;
    add_outer(lh, c, phi, phi);
    symmetrize(lh);
    auto [y, residual] = y_from_laplacian(s, lh);
    if (residual > tol::verify) throw Error("rank-one update left the affine span");
    return certificate_from_y(s, y);
}

RigidityReport cube_rigidity_check(int d, std::optional<int> k_override,
                                   const SolverOptions& opt) {
    if (d < 1 || d > 4) throw Error("cube rigidity check supports 1 <= d <= 4");
    RigidityReport rep;
    rep.d = d;
    rep.k = k_override.value_or(d + 1);
    const WeightedGraph g = cube_graph(d);
    const EigenBasis basis = canonical_basis(g, CanonicalFamily::cube);
    const SpectralStructure s = build_structure(g, rep.k, basis);

    rep.own_feasible = membership(s, s.own_y()).is_member;
    for (const auto& e : g.edges) {
        const FeasibilityResult r =
            solve_feasibility(make_problem(s, {{e.u, e.v}}), opt);
        rep.single_edge_attempts.emplace_back(VertexPair{e.u, e.v}, r.status);
        if (r.status == FeasibilityStatus::found) ++rep.deletable_edges;
    }
    const GreedyResult greedy = greedy_sparsify(s, EdgeOrder::slack, opt);
    rep.greedy_deletions = static_cast<int>(greedy.certificate.deleted_edges.size());

    if (rep.k == d + 1) {
        for (const auto& e : g.edges)
            for (const double delta : {0.01, -0.01}) {
                WeightedGraph perturbed = g;
                perturbed.edges[*g.edge_index(e.u, e.v)].w = e.w + delta;
                ++rep.perturbation_checks;
                if (!verify_isospectral(g, perturbed, rep.k, basis).verified)
                    ++rep.perturbation_failures;
            }
        rep.rigid = rep.own_feasible && rep.deletable_edges == 0 && rep.greedy_deletions == 0 &&
                    rep.perturbation_failures == rep.perturbation_checks;
    } else {
        rep.rigid = false;
    }
    return rep;
}

}  // namespace isospec
