#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "isospec/certificate.hpp"
#include "isospec/cli.hpp"
#include "isospec/common.hpp"
#include "isospec/constructions.hpp"
#include "isospec/graph_io.hpp"
#include "isospec/rng.hpp"
#include "isospec/section.hpp"
#include "isospec/search.hpp"
#include "isospec/structure.hpp"

using namespace isospec;
using json = nlohmann::ordered_json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
    json payload() const { return json::parse(out).at("payload"); }
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("isospec-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen writes a parsable wheel file") {
    TempDir tmp;
    const std::string path = tmp.file("w9.isg");
    const CliRun r = run_cli({"gen", "--family", "wheel", "--param", "8", "-o", path});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("n") == 9);
    CHECK(r.payload().at("m") == 16);
    const WeightedGraph g = load_graph_file(path);
    CHECK(g == wheel_graph(8));
}

TEST_CASE("gen without output streams the edge list") {
    const CliRun r = run_cli({"gen", "--family", "complete", "--param", "4"});
    REQUIRE(r.code == 0);
    CHECK(parse_graph(r.out) == complete_graph(4));
}

TEST_CASE("bound reports the dense-graph fixture") {
    const CliRun r = run_cli({"bound", "-n", "12", "-m", "36"});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("max_k") == 4);
    const CliRun tree = run_cli({"bound", "-n", "9", "-m", "8"});
    CHECK(tree.payload().at("max_k").is_null());
}

TEST_CASE("unknown subcommand and bad flags exit 2") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"bound", "-n", "12"}).code == 2);
    CHECK(run_cli({"gen", "--family", "nosuch", "--param", "3"}).code == 2);
}

TEST_CASE("sparsify on the wheel reaches the closed-form star") {
    TempDir tmp;
    const std::string gpath = tmp.file("w9.isg");
    save_graph_file(wheel_graph(8), gpath);
    const std::string cpath = tmp.file("cert.json");
    const CliRun r = run_cli({"sparsify", gpath, "-k", "3", "-o", cpath});
    REQUIRE(r.code == 0);
    const json payload = r.payload();
    CHECK(payload.at("verified") == true);
    CHECK(payload.at("deleted_edges").size() == 8);  // the whole rim
    // spoke weights 3 - 2cos(pi/4) ~ 1.585786
    const json l = payload.at("certificate").at("L");
    for (int i = 0; i < 8; ++i)
        CHECK(-l[i][8].get<double>() == doctest::Approx(1.5857864376).epsilon(1e-6));

    // round-trip through the certificate file and re-verification
    const CliRun v = run_cli({"verify", gpath, "--cert", cpath});
    CHECK(v.code == 0);
    CHECK(v.payload().at("verified") == true);
}

TEST_CASE("verify rejects tampered and mismatched certificates") {
    TempDir tmp;
    const std::string gpath = tmp.file("w9.isg");
    save_graph_file(wheel_graph(8), gpath);
    const std::string cpath = tmp.file("cert.json");
    REQUIRE(run_cli({"sparsify", gpath, "-k", "3", "-o", cpath}).code == 0);

    // tamper with Y: parse succeeds, re-verification fails
    std::ifstream in(cpath);
    json cert;
    in >> cert;
    cert["Y"][0][0] = cert["Y"][0][0].get<double>() + 0.5;
    const std::string tampered = tmp.file("tampered.json");
    std::ofstream(tampered) << cert.dump(2);
    const CliRun bad = run_cli({"verify", gpath, "--cert", tampered});
    CHECK(bad.code == 1);
    CHECK(bad.payload().at("verified") == false);

    // wrong graph
    const std::string other = tmp.file("other.isg");
    save_graph_file(complete_graph(5), other);
    const CliRun mismatch = run_cli({"verify", other, "--cert", cpath});
    CHECK(mismatch.code == 1);
    CHECK(std::string(mismatch.payload().at("failure")).find("different graph") !=
          std::string::npos);
}

TEST_CASE("certificate JSON round-trip and schema diagnostics") {
    const WeightedGraph g = butterfly_graph();
    const SpectralStructure s = build_structure(g, 2, laplacian_eigbasis(g));
    const GreedyResult gr = greedy_sparsify(s);
    const std::string text = serialize_certificate(gr.certificate, "computed");
    const ParsedCertificate parsed = parse_certificate(text);
    CHECK(parsed.basis_kind == "computed");
    CHECK(parsed.certificate.ref.graph_hash == gr.certificate.ref.graph_hash);
    CHECK(parsed.certificate.deleted_edges == gr.certificate.deleted_edges);
    CHECK(max_abs(parsed.certificate.y - gr.certificate.y) == 0.0);
    CHECK(serialize_certificate(parsed.certificate, parsed.basis_kind) == text);

    CHECK_THROWS_WITH_AS(parse_certificate("{}"), doctest::Contains("$.schema"), Error);
    json broken = json::parse(text);
    broken["deleted_edges"][0] = json::array({0, 9});
    CHECK_THROWS_WITH_AS(parse_certificate(broken.dump()),
                         doctest::Contains("$.deleted_edges[0]"), Error);
    broken = json::parse(text);
    broken["Y"][0][0] = "oops";
    CHECK_THROWS_WITH_AS(parse_certificate(broken.dump()), doctest::Contains("$.Y[0][0]"), Error);
}

TEST_CASE("member subcommand on the K4 chart point") {
    TempDir tmp;
    const std::string gpath = tmp.file("k4.isg");
    save_graph_file(complete_graph(4), gpath);
    const std::string ypath = tmp.file("y.json");
    std::ofstream(ypath) << "[[4, 0], [0, 0]]";
    const CliRun r =
        run_cli({"member", gpath, "-k", "2", "--basis", "canonical", "--y", ypath});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("is_member") == true);
    CHECK(r.payload().at("zero_edges").size() == 2);

    std::ofstream(ypath) << "[[1, 2], [2, 1]]";
    const CliRun bad =
        run_cli({"member", gpath, "-k", "2", "--basis", "canonical", "--y", ypath});
    CHECK(bad.code == 1);
    CHECK(bad.payload().at("is_member") == false);
}

TEST_CASE("qsparsify verifies the known cube tree weights") {
    TempDir tmp;
    const std::string gpath = tmp.file("q3.isg");
    const WeightedGraph g = cube_graph(3);
    save_graph_file(g, gpath);
    Vec w(g.edges.size(), 0.0);
    auto set = [&](int u, int v, double value) { w[*g.edge_index(u - 1, v - 1)] = value; };
    set(1, 2, 3.0);
    set(1, 4, 3.0);
    set(1, 3, 2.0);
    set(2, 5, 1.0);
    set(3, 7, 1.0);
    set(4, 6, 1.0);
    set(6, 8, 1.0);
    const std::string wpath = tmp.file("w.json");
    json jw = w;
    std::ofstream(wpath) << jw.dump();
    const CliRun r = run_cli({"qsparsify", gpath, "-k", "4", "--basis", "canonical",
                              "--verify-weights", wpath});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("passes") == true);
    CHECK(r.payload().at("connected") == true);
    CHECK(r.payload().at("eigenreport")[1].get<double>() == doctest::Approx(0.3677).epsilon(1e-3));
}

TEST_CASE("qsparsify runs the LP when no weights are given") {
    TempDir tmp;
    const std::string gpath = tmp.file("k3.isg");
    save_graph_file(make_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 2.0}}), gpath);
    const CliRun r = run_cli({"qsparsify", gpath, "-k", "2", "--objective", "0,1,1"});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("passes") == true);
    CHECK(r.payload().at("lp_status") == "optimal");
    // corner (2,0,0)
    CHECK(r.payload().at("w")[0].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.payload().at("zero_edges").size() == 2);
}

TEST_CASE("experiment on forced K4 finds deletions at k=2") {
    const CliRun r = run_cli({"experiment", "-n", "4", "-m", "6", "--k-list", "2", "--trials",
                              "3", "--seed", "5"});
    REQUIRE(r.code == 0);
    const json rates = r.payload().at("rates");
    CHECK(rates.at("2").at("deletion_rate").get<double>() == doctest::Approx(1.0));
    // same seed, byte-identical payload
    const CliRun again = run_cli({"experiment", "-n", "4", "-m", "6", "--k-list", "2",
                                  "--trials", "3", "--seed", "5"});
    CHECK(r.payload().dump() == again.payload().dump());
}

TEST_CASE("section scan of the butterfly quadrant") {
    TempDir tmp;
    const std::string gpath = tmp.file("bf.isg");
    save_graph_file(butterfly_graph(), gpath);
    const CliRun r = run_cli({"section", gpath, "-k", "2", "--plan", "butterfly-ab", "--min",
                              "-1,-1", "--max", "1,1", "--step", "0.5"});
    REQUIRE(r.code == 0);
    // CSV on stdout: 25 grid points; members are exactly the quadrant a,b >= 0
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# a,b,member,zero_mask");
    int members = 0, rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        const double a = std::stod(line.substr(0, c1));
        const double b = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const bool member = line[c2 + 1] == '1';
        if (member) ++members;
        CHECK(member == (a >= -1e-12 && b >= -1e-12));
    }
    CHECK(rows == 25);
    CHECK(members == 9);
}

TEST_CASE("eig subcommand reports values and clusters") {
    TempDir tmp;
    const std::string gpath = tmp.file("bf.isg");
    save_graph_file(butterfly_graph(), gpath);
    const CliRun r = run_cli({"eig", gpath, "-k", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("values").size() == 5);
    CHECK(r.payload().at("degenerate_cut") == true);
    const CliRun r2 = run_cli({"eig", gpath, "-k", "2"});
    CHECK(r2.payload().at("degenerate_cut") == false);
}

TEST_CASE("construct subcommand emits verified certificates") {
    const CliRun r = run_cli({"construct", "--what", "wheel-star", "--param", "8"});
    REQUIRE(r.code == 0);
    CHECK(r.payload().at("verified") == true);
    CHECK(r.payload().at("claimed_k") == 3);
}

TEST_CASE("reports are reproducible for fixed seeds and flags") {
    TempDir tmp;
    const std::string gpath = tmp.file("k5.isg");
    save_graph_file(complete_graph(5), gpath);
    const std::vector<std::string> cmd = {"sparsify", gpath, "-k", "3", "--basis", "canonical"};
    const CliRun a = run_cli(cmd);
    const CliRun b = run_cli(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.payload().dump() == b.payload().dump());
}

TEST_CASE("section member points survive the independent oracle") {
    // spot check: random member grid points, mapped through their Laplacian,
    // must verify as isospectral subgraphs

    const WeightedGraph k4 = complete_graph(4);
    const EigenBasis basis = canonical_basis(k4, CanonicalFamily::complete);
    const SpectralStructure s = build_structure(k4, 2, basis);
    SectionPlan plan;
    plan.offset = Matrix(2, 2);
    Matrix da(2, 2), db(2, 2), dc(2, 2);
    da(0, 0) = 1.0;
    db(1, 1) = 1.0;
    dc(0, 1) = dc(1, 0) = 1.0;
    plan.directions = {da, db, dc};
    plan.axes = {{"a", 0.0, 5.0, 0.5}, {"b", 0.0, 5.0, 0.5}, {"c", -3.0, 3.0, 0.5}};
    const SectionCloud cloud = section_scan(s, plan);
    std::vector<const SectionPoint*> members;
    for (const auto& pt : cloud.points)
        if (pt.member) members.push_back(&pt);
    REQUIRE(members.size() >= 100);
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const SectionPoint& pt = *members[rng.next_below(members.size())];
        Matrix y = plan.offset;
        for (size_t a = 0; a < plan.directions.size(); ++a)
            y += pt.coords[a] * plan.directions[a];
        const WeightedGraph cand = subgraph_from_laplacian(k4, laplacian_from_y(s, y));
        CHECK(verify_isospectral(k4, cand, 2, basis).verified);
    }
}

TEST_CASE("section edge cases: empty grid and degenerate plans") {
    const WeightedGraph k4 = complete_graph(4);
    const SpectralStructure s =
        build_structure(k4, 2, canonical_basis(k4, CanonicalFamily::complete));
    SectionPlan plan;
    plan.offset = Matrix(2, 2);
    Matrix da(2, 2), db(2, 2);
    da(0, 0) = 1.0;
    db(1, 1) = 1.0;
    plan.directions = {da, db};
    plan.axes = {{"a", 1.0, 0.0, 0.25}, {"b", 0.0, 1.0, 0.25}};  // first axis empty
    CHECK(section_scan(s, plan).points.empty());

    plan.directions = {da, da};  // dependent directions
    plan.axes = {{"a", 0.0, 1.0, 0.25}, {"b", 0.0, 1.0, 0.25}};
    CHECK_THROWS_WITH_AS(section_scan(s, plan), doctest::Contains("degenerate"), Error);
}
