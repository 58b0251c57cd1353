#include "isospec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "isospec/certificate.hpp"
#include "isospec/common.hpp"
#include "isospec/constructions.hpp"
#include "isospec/experiment.hpp"
#include "isospec/feasibility.hpp"
#include "isospec/graph_io.hpp"
#include "isospec/quadform.hpp"
#include "isospec/search.hpp"
#include "isospec/section.hpp"

namespace isospec {

using json = nlohmann::ordered_json;

namespace {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json edge_list_json(const std::vector<VertexPair>& pairs) {
    json out = json::array();
    for (auto [u, v] : pairs) out.push_back(json::array({u + 1, v + 1}));
    return out;
}

json graph_json(const WeightedGraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back(json::array({e.u + 1, e.v + 1, e.w}));
    return json{{"n", g.n}, {"edges", std::move(edges)}};
}

std::optional<CanonicalFamily> detect_canonical_family(const WeightedGraph& g) {
    if (g == complete_graph(g.n)) return CanonicalFamily::complete;
    for (int d = 1; d <= 6; ++d)
        if ((1 << d) == g.n && g == cube_graph(d)) return CanonicalFamily::cube;
    if (g.n >= 5 && g == wheel_graph(g.n - 1)) return CanonicalFamily::wheel;
    if (g == complete_minus_edge_graph(g.n)) return CanonicalFamily::complete_minus_edge;
    return std::nullopt;
}

struct BasisChoice {
    EigenBasis basis;
    std::string kind;  // "computed" or "canonical:<family>"
};

BasisChoice pick_basis(const WeightedGraph& g, const std::string& mode) {
    if (mode == "computed") return {laplacian_eigbasis(g), "computed"};
    if (mode == "canonical") {
        const auto family = detect_canonical_family(g);
        if (!family)
            throw Error("--basis canonical requires a complete, cube, wheel or "
                        "complete-minus-edge graph");
        const char* name = nullptr;
        switch (*family) {
            case CanonicalFamily::complete: name = "complete"; break;
            case CanonicalFamily::cube: name = "cube"; break;
            case CanonicalFamily::wheel: name = "wheel"; break;
            case CanonicalFamily::complete_minus_edge: name = "complete-minus-edge"; break;
        }
        return {canonical_basis(g, *family), std::string("canonical:") + name};
    }
    throw Error("unknown basis mode '" + mode + "' (want computed|canonical)");
}

Matrix matrix_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw Error(path + ": invalid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("Y")) j = j["Y"];
    if (!j.is_array()) throw Error(path + ": expected a matrix (array of rows)");
    const int n = static_cast<int>(j.size());
    Matrix m(n, n == 0 ? 0 : static_cast<int>(j[0].size()));
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != m.cols())
            throw Error(path + ": ragged matrix");
        for (int c = 0; c < m.cols(); ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

Vec vector_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw Error(path + ": invalid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("w")) j = j["w"];
    if (!j.is_array()) throw Error(path + ": expected an array of weights");
    Vec w;
    for (const auto& v : j) w.push_back(v.get<double>());
    return w;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "isospec";
    for (const auto& a : args) s += " " + a;
    return s;
}

struct ReportWriter {
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int emit(std::ostream& out, std::ostream& err, json payload, const std::string& summary,
             int code, json header = json::object()) const {
        json rep;
        rep["command"] = command;
        for (auto& [k, v] : header.items()) rep[k] = v;
        rep["payload"] = std::move(payload);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        rep["wall_time_ms"] = static_cast<double>(us) / 1000.0;
        out << rep.dump(2) << "\n";
        err << summary << "\n";
        return code;
    }
};

json structure_header(const WeightedGraph& g, int k, const BasisChoice& basis,
                      bool degenerate) {
    json h;
    h["graph_hash"] = hash_string(graph_hash(g));
    h["k"] = k;
    h["basis"] = basis.kind;
    h["basis_fingerprint"] = hash_string(basis_fingerprint(basis.basis));
    h["degenerate_cut"] = degenerate;
    return h;
}

SectionPlan k4_abc_plan() {
    SectionPlan plan;
    plan.offset = Matrix(2, 2);
    Matrix da(2, 2), db(2, 2), dc(2, 2);
    da(0, 0) = 1.0;
    db(1, 1) = 1.0;
    dc(0, 1) = dc(1, 0) = 1.0;
    plan.directions = {da, db, dc};
    plan.axes = {{"a", 0.0, 5.0, 0.25}, {"b", 0.0, 5.0, 0.25}, {"c", -3.0, 3.0, 0.25}};
    return plan;
}

SectionPlan butterfly_ab_plan(const SpectralStructure& s) {
    auto family_laplacian = [&](double a, double b) {
        Matrix l = build_laplacian(butterfly_graph());
        const auto bump = [&l](int u, int v, double delta) {
            l(u, u) += delta;
            l(v, v) += delta;
            l(u, v) -= delta;
            l(v, u) -= delta;
        };
        bump(1, 2, a - 1.0);
        bump(3, 4, b - 1.0);
        return l;
    };
    const Matrix y00 = y_from_laplacian(s, family_laplacian(0, 0)).first;
    Matrix da = y_from_laplacian(s, family_laplacian(1, 0)).first - y00;
    Matrix db = y_from_laplacian(s, family_laplacian(0, 1)).first - y00;
    SectionPlan plan;
    plan.offset = y00;
    plan.directions = {da, db};
    plan.axes = {{"a", 0.0, 5.0, 0.25}, {"b", 0.0, 5.0, 0.25}};
    return plan;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectrahedral graph sparsifiers"};
    app.require_subcommand(1);

    ReportWriter report{join_args(args)};

    // shared options
    std::string graph_path, basis_mode = "computed", order_name = "slack", out_path;
    int k = 2;
    double feas_tol = tol::feasibility;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_k) {
        cmd->add_option("graph", graph_path, "input .isg file")->required();
        if (needs_k) cmd->add_option("-k,--k", k, "how many leading eigenpairs to preserve")->required();
        cmd->add_option("--basis", basis_mode, "computed|canonical");
        cmd->add_option("--tol", feas_tol, "feasibility tolerance override");
        return cmd;
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate a family graph or a seeded random graph");
    std::string family_name;
    std::string param_csv;
    gen->add_option("--family", family_name,
                    "complete|wheel|cube|barbell|lollipop|path|complete-minus-edge|butterfly|er")
        ->required();
    gen->add_option("--param", param_csv, "family parameters, comma separated");
    gen->add_option("--seed", seed, "random seed (er family)");
    gen->add_option("-o,--output", out_path, "output .isg path");

    // eig
    auto* eig = app.add_subcommand("eig", "eigenvalues and eigenbasis of the Laplacian");
    bool show_vectors = false;
    add_common(eig, false);
    eig->add_option("-k,--k", k, "flag the cut after the first k eigenpairs");
    eig->add_flag("--vectors", show_vectors, "include eigenvectors in the payload");

    // structure
    auto* st = app.add_subcommand("structure", "the fixed matrix and constraint counts");
    add_common(st, true);

    // member
    auto* mem = app.add_subcommand("member", "test a Y point for membership");
    std::string y_path;
    add_common(mem, true);
    mem->add_option("--y", y_path, "JSON file with the Y matrix")->required();

    // sparsify
    auto* sp = app.add_subcommand("sparsify", "greedy maximal deletion search");
    add_common(sp, true);
    sp->add_option("--order", order_name, "slack|lex|weight");
    sp->add_option("-o,--output", out_path, "write the certificate JSON here");

    // qsparsify
    auto* qs = app.add_subcommand("qsparsify", "quadratic-form polyhedron vertex by LP");
    std::string objective_csv, weights_path;
    add_common(qs, true);
    qs->add_option("--objective", objective_csv, "edge-cost vector, comma separated (default all ones)");
    qs->add_option("--verify-weights", weights_path, "skip the LP and verify this weight vector");
    qs->add_option("-o,--output", out_path, "write the weight vector JSON here");

    // construct
    auto* co = app.add_subcommand("construct", "closed-form constructions");
    std::string what;
    int param_n = 0;
    co->add_option("--what", what,
                   "complete-star|wheel-star|complete-minus-edge-star|no-sparsifier")
        ->required();
    co->add_option("--param", param_n, "family size parameter")->required();
    co->add_option("-o,--output", out_path, "certificate (or graph for no-sparsifier) path");

    // bound
    auto* bd = app.add_subcommand("bound", "generic edge-count bound on k");
    int bn = 0;
    long long bm = 0;
    bd->add_option("-n", bn, "vertices")->required();
    bd->add_option("-m", bm, "edges")->required();

    // rigidity
    auto* rg = app.add_subcommand("rigidity", "cube rigidity check");
    int rd = 2;
    int rk = -1;
    rg->add_option("-d", rd, "cube dimension (1..4)")->required();
    rg->add_option("-k,--k", rk, "override the cut (default d+1)");

    // experiment
    auto* ex = app.add_subcommand("experiment", "random-graph heuristic experiment");
    int en = 12, em = 36, trials = 20;
    std::string klist_csv = "4,5";
    ex->add_option("-n", en, "vertices")->required();
    ex->add_option("-m", em, "edges")->required();
    ex->add_option("--k-list", klist_csv, "comma separated k values");
    ex->add_option("--trials", trials, "trial count");
    ex->add_option("--seed", seed, "master seed");

    // section
    auto* se = app.add_subcommand("section", "grid scan of a Y-space section");
    std::string plan_name = "k4-abc", min_csv, max_csv, step_csv;
    add_common(se, true);
    se->add_option("--plan", plan_name, "k4-abc|butterfly-ab");
    se->add_option("--min", min_csv, "per-axis minima, comma separated");
    se->add_option("--max", max_csv, "per-axis maxima, comma separated");
    se->add_option("--step", step_csv, "per-axis steps, comma separated");
    se->add_option("-o,--output", out_path, "CSV output path (default: CSV to stdout)");

    // verify
    auto* ve = app.add_subcommand("verify", "independent re-verification");
    std::string candidate_path, cert_path;
    add_common(ve, false);
    ve->add_option("-k,--k", k, "k (required with --candidate)");
    ve->add_option("--candidate", candidate_path, "candidate .isg file");
    ve->add_option("--cert", cert_path, "certificate JSON file");

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv = {"isospec"};
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    // ---- gen ----
    if (gen->parsed()) {
        WeightedGraph g;
        std::vector<int> params;
        if (!param_csv.empty())
            for (double v : parse_csv_doubles(param_csv)) params.push_back(static_cast<int>(v));
        if (family_name == "er") {
            if (params.size() != 2) throw Error("er family needs --param n,m");
            g = erdos_renyi_conditioned(params[0], params[1], seed);
        } else {
            g = generate({family_name, params});
        }
        const std::string text = write_graph(g);
        if (out_path.empty()) {
            out << text;
            err << "generated " << family_name << ": n=" << g.n << " m=" << g.edge_count() << "\n";
            return 0;
        }
        write_text_file(out_path, text);
        json payload = {{"family", family_name},
                        {"n", g.n},
                        {"m", g.edge_count()},
                        {"connected", connected(g)},
                        {"written", out_path}};
        json header = {{"graph_hash", hash_string(graph_hash(g))}};
        return report.emit(out, err, payload,
                           "wrote " + out_path + " (n=" + std::to_string(g.n) + ", m=" +
                               std::to_string(g.edge_count()) + ")",
                           0, header);
    }

    // ---- bound ----
    if (bd->parsed()) {
        const auto max_k = la_heuristic_max_k(bn, bm);
        json payload;
        payload["max_k"] = max_k ? json(*max_k) : json(nullptr);
        return report.emit(out, err, payload,
                           max_k ? "heuristic max k = " + std::to_string(*max_k)
                                 : "heuristic predicts no sparsifiers at any k >= 2",
                           0);
    }

    // ---- rigidity ----
    if (rg->parsed()) {
        const RigidityReport rep =
            cube_rigidity_check(rd, rk > 0 ? std::optional<int>(rk) : std::nullopt);
        json attempts = json::array();
        for (const auto& [e, status] : rep.single_edge_attempts)
            attempts.push_back({{"edge", json::array({e.first + 1, e.second + 1})},
                                {"status", to_string(status)}});
        json payload = {{"d", rep.d},
                        {"k", rep.k},
                        {"own_feasible", rep.own_feasible},
                        {"single_edge_attempts", attempts},
                        {"deletable_edges", rep.deletable_edges},
                        {"greedy_deletions", rep.greedy_deletions},
                        {"perturbation_checks", rep.perturbation_checks},
                        {"perturbation_failures", rep.perturbation_failures},
                        {"rigid", rep.rigid}};
        const bool expected = rep.k == rd + 1 ? rep.rigid : true;
        return report.emit(out, err, payload,
                           std::string("cube d=") + std::to_string(rd) +
                               (rep.rigid ? ": rigid" : ": not proven rigid"),
                           expected ? 0 : 1);
    }

    // ---- experiment ----
    if (ex->parsed()) {
        std::vector<int> k_list;
        for (double v : parse_csv_doubles(klist_csv)) k_list.push_back(static_cast<int>(v));
        const ExperimentTable table = run_experiment(en, em, k_list, trials, seed);
        json rows = json::array();
        for (const auto& r : table.rows)
            rows.push_back({{"seed", r.seed},
                            {"n", r.n},
                            {"m", r.m},
                            {"k", r.k},
                            {"deletions", r.deletions},
                            {"predicted", r.predicted},
                            {"agreement", r.agreement}});
        json rates = json::object();
        for (int kk : k_list)
            rates[std::to_string(kk)] = {{"deletion_rate", table.deletion_rate(kk)},
                                         {"agreement_rate", table.agreement_rate(kk)}};
        json payload = {{"n", en},
                        {"m", em},
                        {"trials", trials},
                        {"master_seed", seed},
                        {"heuristic_max_k",
                         table.heuristic_max_k ? json(*table.heuristic_max_k) : json(nullptr)},
                        {"rejected_disconnected", table.rejected_disconnected},
                        // "typically" is operationalized as a 70% agreement rate;
                        // a tool convention, recorded here so reports are self-describing
                        {"typical_threshold", 0.7},
                        {"rates", rates},
                        {"rows", rows}};
        std::string summary = "experiment n=" + std::to_string(en) + " m=" + std::to_string(em);
        for (int kk : k_list)
            summary += " | k=" + std::to_string(kk) + " deletion rate " +
                       format_double(table.deletion_rate(kk));
        return report.emit(out, err, payload, summary, 0);
    }

    // ---- construct ----
    if (co->parsed()) {
        if (what == "no-sparsifier") {
            const WeightedGraph g = no_sparsifier_graph(param_n);
            const std::string text = write_graph(g);
            if (out_path.empty()) {
                out << text;
                err << "no-sparsifier graph n=" << g.n << "\n";
                return 0;
            }
            write_text_file(out_path, text);
            json payload = {{"what", what}, {"n", g.n}, {"m", g.edge_count()}, {"written", out_path}};
            return report.emit(out, err, payload, "wrote " + out_path, 0,
                               {{"graph_hash", hash_string(graph_hash(g))}});
        }
        ConstructionResult r;
        if (what == "complete-star")
            r = complete_star(param_n);
        else if (what == "wheel-star")
            r = wheel_star(param_n);
        else if (what == "complete-minus-edge-star")
            r = complete_minus_edge_star(param_n);
        else
            throw Error("unknown construction '" + what + "'");
        const std::string cert_text = serialize_certificate(r.certificate, "construction");
        if (!out_path.empty()) write_text_file(out_path, cert_text);
        json payload = {{"what", what},
                        {"claimed_k", r.claimed_k},
                        {"provenance", r.provenance},
                        {"verified", r.certificate.verified},
                        {"deleted_edges", edge_list_json(r.certificate.deleted_edges)},
                        {"sparsifier", graph_json(r.graph)},
                        {"certificate", json::parse(cert_text)}};
        json header = {{"graph_hash", hash_string(graph_hash(r.original))},
                       {"k", r.claimed_k},
                       {"basis_fingerprint", hash_string(basis_fingerprint(r.basis_used))}};
        return report.emit(out, err, payload,
                           what + "(" + std::to_string(param_n) + "): " +
                               (r.certificate.verified ? "verified" : "NOT verified"),
                           r.certificate.verified ? 0 : 1, header);
    }

    // everything below needs the graph file
    const WeightedGraph g = load_graph_file(graph_path);

    // ---- eig ----
    if (eig->parsed()) {
        const BasisChoice basis = pick_basis(g, basis_mode);
        json clusters = json::array();
        for (auto [b, e] : basis.basis.clusters) clusters.push_back(json::array({b, e}));
        json payload = {{"values", basis.basis.values}, {"clusters", clusters}};
        if (eig->count("-k") || eig->count("--k"))
            payload["degenerate_cut"] = basis.basis.degenerate_cut(k);
        if (show_vectors) payload["vectors"] = matrix_json(basis.basis.vectors);
        json header = {{"graph_hash", hash_string(graph_hash(g))},
                       {"basis", basis.kind},
                       {"basis_fingerprint", hash_string(basis_fingerprint(basis.basis))}};
        std::ostringstream sum;
        sum << "eigenvalues:";
        for (double v : basis.basis.values) sum << " " << format_double(v);
        return report.emit(out, err, payload, sum.str(), 0, header);
    }

    // ---- structure ----
    if (st->parsed()) {
        const BasisChoice basis = pick_basis(g, basis_mode);
        const SpectralStructure s = build_structure(g, k, basis.basis);
        json payload = {{"n", g.n},
                        {"k", k},
                        {"tail_dim", s.tail_dim()},
                        {"free_parameters", s.tail_dim() * (s.tail_dim() + 1) / 2},
                        {"edges", static_cast<int>(s.edge_pairs.size())},
                        {"non_edges", static_cast<int>(s.non_edge_pairs.size())},
                        {"cut_value", s.cut_value},
                        {"F", matrix_json(s.fixed)}};
        return report.emit(out, err, payload,
                           "structure built; tail dimension " + std::to_string(s.tail_dim()),
                           0, structure_header(g, k, basis, s.degenerate_cut));
    }

    // ---- member ----
    if (mem->parsed()) {
        const BasisChoice basis = pick_basis(g, basis_mode);
        const SpectralStructure s = build_structure(g, k, basis.basis);
        const Matrix y = matrix_from_file(y_path);
        const MembershipReport r = membership(s, y, feas_tol);
        json ineq = json::object(), eq = json::object();
        for (const auto& [pr, v] : r.inequality_residuals)
            ineq[std::to_string(pr.first + 1) + "," + std::to_string(pr.second + 1)] = v;
        for (const auto& [pr, v] : r.equality_residuals)
            eq[std::to_string(pr.first + 1) + "," + std::to_string(pr.second + 1)] = v;
        json payload = {{"is_member", r.is_member},
                        {"psd_violation", r.psd_violation},
                        {"max_inequality", r.max_inequality()},
                        {"max_equality", r.max_equality()},
                        {"zero_edges", edge_list_json(r.zero_edges)},
                        {"inequality_residuals", ineq},
                        {"equality_residuals", eq}};
        return report.emit(out, err, payload,
                           r.is_member ? "member" : "not a member",
                           r.is_member ? 0 : 1, structure_header(g, k, basis, s.degenerate_cut));
    }

    // ---- sparsify ----
    if (sp->parsed()) {
        const BasisChoice basis = pick_basis(g, basis_mode);
        const SpectralStructure s = build_structure(g, k, basis.basis);
        SolverOptions opt;
        opt.feas_tol = feas_tol;
        const GreedyResult r = greedy_sparsify(s, edge_order_from_string(order_name), opt);
        const std::string cert_text = serialize_certificate(r.certificate, basis.kind);
        if (!out_path.empty()) write_text_file(out_path, cert_text);
        json attempts = json::array();
        for (const auto& [e2, status] : r.attempts)
            attempts.push_back({{"edge", json::array({e2.first + 1, e2.second + 1})},
                                {"status", to_string(status)}});
        json payload = {{"deleted_edges", edge_list_json(r.certificate.deleted_edges)},
                        {"verified", r.certificate.verified},
                        {"order", order_name},
                        {"attempts", attempts},
                        {"certificate", json::parse(cert_text)}};
        json header = structure_header(g, k, basis, s.degenerate_cut);
        header["residual_summary"] = {{"psd", r.certificate.psd_residual},
                                      {"inequality", r.certificate.inequality_residual},
                                      {"equality", r.certificate.equality_residual}};
        const int deletions = static_cast<int>(r.certificate.deleted_edges.size());
        return report.emit(out, err, payload,
                           "deleted " + std::to_string(deletions) + " edge(s), " +
                               (r.certificate.verified ? "verified" : "NOT verified"),
                           deletions > 0 && r.certificate.verified ? 0 : 1, header);
    }

    // ---- qsparsify ----
    if (qs->parsed()) {
        const BasisChoice basis = pick_basis(g, basis_mode);
        const QPolyhedron q = build_qpolyhedron(g, k, basis.basis);
        json header = {{"graph_hash", hash_string(graph_hash(g))},
                       {"k", k},
                       {"basis", basis.kind},
                       {"basis_fingerprint", hash_string(basis_fingerprint(basis.basis))}};
        Vec w;
        json lp_info = json::object();
        if (!weights_path.empty()) {
            w = vector_from_file(weights_path);
        } else {
            Vec objective(g.edges.size(), 1.0);
            if (!objective_csv.empty()) {
                const auto vals = parse_csv_doubles(objective_csv);
                if (vals.size() != g.edges.size())
                    throw Error("objective needs one entry per edge (" +
                                std::to_string(g.edges.size()) + ")");
                objective.assign(vals.begin(), vals.end());
            }
            const LpResult lp = lp_vertex(q, objective);
            if (lp.status == LpResult::Status::unbounded) {
                json payload = {{"lp_status", "unbounded"}};
                return report.emit(out, err, payload, "LP unbounded in that direction", 1, header);
            }
            w = lp.w;
            lp_info = {{"lp_status", "optimal"}, {"objective_value", lp.objective}};
        }
        const QCertificate cert = verify_qform(g, w, k, basis.basis);
        if (!out_path.empty()) {
            json jw = {{"w", w}};
            write_text_file(out_path, jw.dump(2) + "\n");
        }
        json payload = {{"w", cert.w},
                        {"zero_edges", edge_list_json(cert.zero_edges)},
                        {"connected", cert.connected},
                        {"qform_residual", cert.qform_residual},
                        {"det_reduced", cert.det_reduced},
                        {"eigenreport", cert.eigenreport},
                        {"passes", cert.passes}};
        for (auto& [key, v] : lp_info.items()) payload[key] = v;
        return report.emit(out, err, payload,
                           std::string(cert.passes ? "quadratic form preserved"
                                                   : "quadratic form NOT preserved") +
                               ", " + std::to_string(cert.zero_edges.size()) + " zero edge(s)",
                           cert.passes ? 0 : 1, header);
    }

    // ---- section ----
    if (se->parsed()) {
        const BasisChoice basis = pick_basis(g, basis_mode);
        const SpectralStructure s = build_structure(g, k, basis.basis);
        SectionPlan plan;
        if (plan_name == "k4-abc") {
            if (g != complete_graph(4)) throw Error("plan k4-abc needs the unit K4");
            plan = k4_abc_plan();
        } else if (plan_name == "butterfly-ab") {
            if (g != butterfly_graph()) throw Error("plan butterfly-ab needs the butterfly fixture");
            plan = butterfly_ab_plan(s);
        } else {
            throw Error("unknown plan '" + plan_name + "'");
        }
        auto override_axis = [&](const std::string& csv, auto member) {
            if (csv.empty()) return;
            auto vals = parse_csv_doubles(csv);
            if (vals.size() == 1) vals.assign(plan.axes.size(), vals[0]);
            if (vals.size() != plan.axes.size())
                throw Error("axis override needs one value or one per axis");
            for (size_t i = 0; i < vals.size(); ++i) plan.axes[i].*member = vals[i];
        };
        override_axis(min_csv, &SectionAxis::lo);
        override_axis(max_csv, &SectionAxis::hi);
        override_axis(step_csv, &SectionAxis::step);
        const SectionCloud cloud = section_scan(s, plan, feas_tol);
        const std::string csv = section_csv(cloud);
        long members = 0;
        for (const auto& p : cloud.points) members += p.member;
        if (out_path.empty()) {
            out << csv;
            err << cloud.points.size() << " grid points, " << members << " members\n";
            return 0;
        }
        write_text_file(out_path, csv);
        json payload = {{"plan", plan_name},
                        {"grid_points", static_cast<long>(cloud.points.size())},
                        {"members", members},
                        {"written", out_path}};
        return report.emit(out, err, payload,
                           std::to_string(cloud.points.size()) + " grid points, " +
                               std::to_string(members) + " members",
                           0, structure_header(g, k, basis, s.degenerate_cut));
    }

    // ---- verify ----
    if (ve->parsed()) {
        if (!candidate_path.empty()) {
            if (!ve->count("-k") && !ve->count("--k")) throw Error("--candidate needs -k");
            const BasisChoice basis = pick_basis(g, basis_mode);
            const WeightedGraph candidate = load_graph_file(candidate_path);
            const VerifyDiagnostics d = verify_isospectral(g, candidate, k, basis.basis);
            json payload = {{"verified", d.verified},
                            {"max_eigenpair_residual", d.max_eigenpair_residual},
                            {"psd_violation", d.psd_violation},
                            {"reconstruction_residual", d.reconstruction_residual},
                            {"failure", d.failure}};
            return report.emit(out, err, payload,
                               d.verified ? "verified" : ("NOT verified: " + d.failure),
                               d.verified ? 0 : 1,
                               structure_header(g, k, basis, basis.basis.degenerate_cut(k)));
        }
        if (cert_path.empty()) throw Error("verify needs --candidate or --cert");
        std::ifstream f(cert_path);
        if (!f) throw Error("cannot open '" + cert_path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        const ParsedCertificate parsed = parse_certificate(ss.str());
        json payload;
        payload["stored_verified"] = parsed.certificate.verified;
        if (parsed.certificate.ref.graph_hash != graph_hash(g)) {
            payload["verified"] = false;
            payload["failure"] = "certificate references a different graph";
            return report.emit(out, err, payload, "NOT verified: graph hash mismatch", 1);
        }
        BasisChoice basis;
        if (parsed.basis_kind.rfind("canonical", 0) == 0)
            basis = pick_basis(g, "canonical");
        else
            basis = pick_basis(g, "computed");
        if (basis_fingerprint(basis.basis) != parsed.certificate.ref.basis_fingerprint) {
            payload["verified"] = false;
            payload["failure"] = "cannot reproduce the certificate's eigenbasis (fingerprint mismatch)";
            return report.emit(out, err, payload, "NOT verified: basis fingerprint mismatch", 1);
        }
        const SpectralStructure s = build_structure(g, parsed.certificate.ref.k, basis.basis);
        const Matrix l = laplacian_from_y(s, parsed.certificate.y);
        bool ok = max_abs(l - parsed.certificate.l) <= 1e-7;
        std::string failure = ok ? "" : "stored L does not match F + Phi Y Phi^T";
        if (ok) {
            try {
                const WeightedGraph candidate = subgraph_from_laplacian(g, l);
                const VerifyDiagnostics d =
                    verify_isospectral(g, candidate, parsed.certificate.ref.k, basis.basis);
                ok = d.verified;
                failure = d.failure;
                for (auto [u, v] : parsed.certificate.deleted_edges)
                    if (std::fabs(l(u, v)) > zero_edge_threshold(g)) {
                        ok = false;
                        failure = "a claimed deleted edge has nonzero weight";
                    }
            } catch (const Error& e2) {
                ok = false;
                failure = e2.what();
            }
        }
        payload["verified"] = ok;
        payload["failure"] = failure;
        payload["k"] = parsed.certificate.ref.k;
        return report.emit(out, err, payload, ok ? "verified" : ("NOT verified: " + failure),
                           ok ? 0 : 1);
    }

    err << "no subcommand matched\n";
    return 2;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace isospec
