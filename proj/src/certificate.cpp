#include "isospec/certificate.hpp"

#include <json.hpp>

#include "isospec/common.hpp"

namespace isospec {

using json = nlohmann::ordered_json;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw Error(path + ": expected an array of rows");
    const int rows = static_cast<int>(j.size());
    int cols = -1;
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array()) throw Error(path + "[" + std::to_string(i) + "]: expected an array");
        if (cols < 0) cols = static_cast<int>(j[i].size());
        if (static_cast<int>(j[i].size()) != cols)
            throw Error(path + "[" + std::to_string(i) + "]: ragged row");
    }
    Matrix m(rows, std::max(cols, 0));
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c) {
            const json& v = j[i][c];
            if (!v.is_number())
                throw Error(path + "[" + std::to_string(i) + "][" + std::to_string(c) +
                            "]: expected a number");
            m(i, c) = v.get<double>();
        }
    return m;
}

const json& field(const json& j, const char* name, const std::string& path) {
    auto it = j.find(name);
    if (it == j.end()) throw Error(path + "." + name + ": missing");
    return *it;
}

}  // namespace

std::string hash_string(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::uint64_t parse_hash(const json& j, const std::string& path) {
    if (!j.is_string()) throw Error(path + ": expected a hash string");
    const std::string s = j.get<std::string>();
    if (s.size() != 18 || s[0] != '0' || s[1] != 'x') throw Error(path + ": malformed hash");
    return std::stoull(s.substr(2), nullptr, 16);
}

}  // namespace

std::string serialize_certificate(const SparsifierCertificate& cert,
                                  const std::string& basis_kind) {
    json j;
    j["schema"] = "isospec.certificate/1";
    j["graph_hash"] = hash_string(cert.ref.graph_hash);
    j["k"] = cert.ref.k;
    j["basis_fingerprint"] = hash_string(cert.ref.basis_fingerprint);
    j["basis_kind"] = basis_kind;
    j["degenerate_cut"] = cert.ref.degenerate_cut;
    j["warnings"] = cert.warnings;
    j["Y"] = matrix_to_json(cert.y);
    j["L"] = matrix_to_json(cert.l);
    json deleted = json::array();
    for (auto [u, v] : cert.deleted_edges) deleted.push_back(json::array({u + 1, v + 1}));
    j["deleted_edges"] = std::move(deleted);
    j["residuals"] = {{"psd", cert.psd_residual},
                      {"inequality", cert.inequality_residual},
                      {"equality", cert.equality_residual}};
    j["verified"] = cert.verified;
    return j.dump(2) + "\n";
}

ParsedCertificate parse_certificate(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("$: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("$: expected an object");
    const std::string p = "$";
    if (field(j, "schema", p) != "isospec.certificate/1")
        throw Error("$.schema: unsupported schema");

    ParsedCertificate out;
    SparsifierCertificate& c = out.certificate;
    c.ref.graph_hash = parse_hash(field(j, "graph_hash", p), "$.graph_hash");
    const json& kj = field(j, "k", p);
    if (!kj.is_number_integer() || kj.get<int>() < 2) throw Error("$.k: expected an integer >= 2");
    c.ref.k = kj.get<int>();
    c.ref.basis_fingerprint = parse_hash(field(j, "basis_fingerprint", p), "$.basis_fingerprint");
    const json& bk = field(j, "basis_kind", p);
    if (!bk.is_string()) throw Error("$.basis_kind: expected a string");
    out.basis_kind = bk.get<std::string>();
    const json& dc = field(j, "degenerate_cut", p);
    if (!dc.is_boolean()) throw Error("$.degenerate_cut: expected a boolean");
    c.ref.degenerate_cut = dc.get<bool>();
    const json& warn = field(j, "warnings", p);
    if (!warn.is_array()) throw Error("$.warnings: expected an array");
    for (size_t i = 0; i < warn.size(); ++i) {
        if (!warn[i].is_string())
            throw Error("$.warnings[" + std::to_string(i) + "]: expected a string");
        c.warnings.push_back(warn[i].get<std::string>());
    }
    c.y = matrix_from_json(field(j, "Y", p), "$.Y");
    c.l = matrix_from_json(field(j, "L", p), "$.L");
    if (c.l.rows() != c.l.cols()) throw Error("$.L: expected a square matrix");
    if (c.y.rows() != c.y.cols()) throw Error("$.Y: expected a square matrix");
    const json& del = field(j, "deleted_edges", p);
    if (!del.is_array()) throw Error("$.deleted_edges: expected an array");
    for (size_t i = 0; i < del.size(); ++i) {
        const std::string dp = "$.deleted_edges[" + std::to_string(i) + "]";
        if (!del[i].is_array() || del[i].size() != 2 || !del[i][0].is_number_integer() ||
            !del[i][1].is_number_integer())
            throw Error(dp + ": expected a pair of 1-based vertex indices");
        const int u = del[i][0].get<int>(), v = del[i][1].get<int>();
        if (u < 1 || v < 1 || u > c.l.rows() || v > c.l.rows() || u >= v)
            throw Error(dp + ": vertex index out of range");
        c.deleted_edges.push_back({u - 1, v - 1});
    }
    const json& res = field(j, "residuals", p);
    if (!res.is_object()) throw Error("$.residuals: expected an object");
    for (const char* name : {"psd", "inequality", "equality"})
        if (!field(res, name, "$.residuals").is_number())
            throw Error(std::string("$.residuals.") + name + ": expected a number");
    c.psd_residual = res["psd"].get<double>();
    c.inequality_residual = res["inequality"].get<double>();
    c.equality_residual = res["equality"].get<double>();
    const json& ver = field(j, "verified", p);
    if (!ver.is_boolean()) throw Error("$.verified: expected a boolean");
    c.verified = ver.get<bool>();
    return out;
}

}  // namespace isospec
