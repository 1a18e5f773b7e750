#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pepos/cli.hpp"
#include "pepos/io.hpp"

using namespace pepos;
using io::json;

namespace {

json sample_problem() {
    return json::parse(R"json({
        "schema_version": "1",
        "query": "verify",
        "base": {"kind": "projective_space", "dim": 2},
        "bundle": {"kind": "split_pn", "twists": [1, 1]},
        "divisor": {"m": 1, "N": [0]}
    })json");
}

std::filesystem::path write_temp(const std::string& name, const json& j) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << j.dump(2);
    return path;
}

int run_cli(const std::vector<std::string>& args, std::string* output = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (output)
        *output = out.str() + err.str();
    return code;
}

} // namespace

TEST_CASE("problem round trip is the identity on canonical documents") {
    std::vector<json> documents;
    documents.push_back(sample_problem());
    documents.push_back(json::parse(R"json({
        "schema_version": "1",
        "query": "threshold",
        "base": {"kind": "curve", "genus": 1},
        "bundle": {"kind": "hn_curve", "blocks": [[2, "1/2"]]},
        "divisor": {"m": 2, "N": ["1/3"]},
        "certificates": [{"subject": "N.is_nef", "value": true, "provenance": "degree 1/3 >= 0"}]
    })json"));
    documents.push_back(json::parse(R"json({
        "schema_version": "1",
        "base": {"kind": "toric", "fan": {"rays": [[1,0],[-1,1],[0,1],[0,-1]],
                                           "max_cones": [[0,2],[1,2],[1,3],[0,3]]}},
        "bundle": {"kind": "equivariant_toric", "rank": 2,
                   "restriction_table": {"w0": [1,2], "w1": [1,1], "w2": [2,1], "w3": [1,1]}},
        "divisor": {"m": 1, "N": [0, 0, 0, 0]}
    })json"));
    documents.push_back(json::parse(R"json({
        "schema_version": "1",
        "query": "verify",
        "base": {"kind": "projective_space", "dim": 3},
        "bundle": {"kind": "tangent_pn", "twist": -1},
        "divisor": {"m": 2, "N": [1]},
        "route": "tangent_pn"
    })json"));
    documents.push_back(json::parse(R"json({
        "schema_version": "1",
        "query": "anti_canonical",
        "base": {"kind": "abstract", "dim": 2, "picard_rank": 1,
                 "canonical_class": ["0"],
                 "families": [{"label": "C", "degree_data": ["1"], "canonical_degree": "0",
                               "exactness": "cone_generating"}]},
        "bundle": {"kind": "semistable_flat", "rank": 2, "det": ["1"], "c2_end_zero": true}
    })json"));
    for (const auto& document : documents) {
        json canonical = io::serialize_problem(io::parse_problem(document));
        json twice = io::serialize_problem(io::parse_problem(canonical));
        CHECK(canonical == twice);
    }
}

TEST_CASE("schema violations are rejected") {
    json bad_field = sample_problem();
    bad_field["surprise"] = 1;
    CHECK_THROWS_WITH_AS(io::parse_problem(bad_field), doctest::Contains("unknown field"), error);

    json bad_version = sample_problem();
    bad_version["schema_version"] = "2";
    CHECK_THROWS_AS(io::parse_problem(bad_version), error);

    json bad_bundle = sample_problem();
    bad_bundle["bundle"]["twists"] = json::array({json::array({1})});
    CHECK_THROWS_AS(io::parse_problem(bad_bundle), error);

    json bad_n = sample_problem();
    bad_n["divisor"]["N"] = json::array({0, 0});
    CHECK_THROWS_WITH_AS(io::parse_problem(bad_n), doctest::Contains("length"), error);

    json bad_rational = sample_problem();
    bad_rational["divisor"]["N"] = json::array({"1.5"});
    CHECK_THROWS_AS(io::parse_problem(bad_rational), error);

    json bad_query = sample_problem();
    bad_query["query"] = "prove";
    CHECK_THROWS_WITH_AS(io::parse_problem(bad_query), doctest::Contains("unknown query"), error);
}

TEST_CASE("reports are deterministic") {
    io::ProblemDocument doc = io::parse_problem(sample_problem());
    SerranoReport r1 = verify_conjecture(io::to_serrano(doc));
    SerranoReport r2 = verify_conjecture(io::to_serrano(doc));
    CHECK(io::report_json(doc, r1).dump() == io::report_json(doc, r2).dump());
}

TEST_CASE("exit code contract") {
    auto verified = write_temp("pepos_verified.json", sample_problem());
    CHECK(run_cli({"verify", verified.string()}) == 0);

    json unknown_doc = json::parse(R"json({
        "schema_version": "1",
        "base": {"kind": "curve", "genus": 3},
        "bundle": {"kind": "hn_curve", "blocks": [[2, "0"]]},
        "divisor": {"m": 1, "N": [0]}
    })json");
    auto unknown = write_temp("pepos_unknown.json", unknown_doc);
    CHECK(run_cli({"verify", unknown.string()}) == 3);

    json refuted_doc = json::parse(R"json({
        "schema_version": "1",
        "base": {"kind": "curve", "genus": 1},
        "bundle": {"kind": "hn_curve", "blocks": [[2, "0"]],
                   "assertions": {"is_strictly_nef": {"value": true,
                                  "provenance": "deliberately wrong"}}},
        "divisor": {"m": 1, "N": [0]}
    })json");
    auto refuted = write_temp("pepos_refuted.json", refuted_doc);
    CHECK(run_cli({"verify", refuted.string()}) == 1);

    json invalid = sample_problem();
    invalid["nonsense"] = true;
    auto bad = write_temp("pepos_invalid.json", invalid);
    CHECK(run_cli({"verify", bad.string()}) == 2);

    CHECK(run_cli({"verify", "/nonexistent/problem.json"}) == 2);
}

TEST_CASE("--no-certificates downgrades certified verdicts") {
    json doc = json::parse(R"json({
        "schema_version": "1",
        "route": "3.3(2)",
        "base": {"kind": "projective_space", "dim": 3},
        "bundle": {"kind": "chern_fixture", "rank": 2, "c1": 0, "c2": 1, "twist": 2,
                   "assertions": {"is_ample": {"value": true, "provenance": "SW190"}}},
        "divisor": {"m": 1, "N": [0]}
    })json");
    auto path = write_temp("pepos_certified.json", doc);
    CHECK(run_cli({"verify", path.string()}) == 0);
    CHECK(run_cli({"--no-certificates", "verify", path.string()}) == 3);
}

TEST_CASE("--json writes a machine-readable report") {
    auto problem = write_temp("pepos_report_in.json", sample_problem());
    auto report_path = std::filesystem::temp_directory_path() / "pepos_report_out.json";
    CHECK(run_cli({"--json", report_path.string(), "verify", problem.string()}) == 0);
    std::ifstream in(report_path);
    REQUIRE(in.good());
    json report = json::parse(in);
    CHECK(report.at("verdict") == "verified");
    CHECK(report.at("threshold").at("t0") == "3/1");
    CHECK(report.at("threshold").at("paper_bound") == 5);
    CHECK(report.contains("timing_ms"));
}

TEST_CASE("ample_at_t query evaluates the adjoint class") {
    json doc = json::parse(R"json({
        "schema_version": "1",
        "query": "ample_at_t",
        "t": "5/2",
        "base": {"kind": "projective_space", "dim": 1},
        "bundle": {"kind": "split_pn", "twists": [0, 1]},
        "divisor": {"m": 1, "N": [1]}
    })json");
    auto path = write_temp("pepos_at_t.json", doc);
    CHECK(run_cli({"verify", path.string()}) == 0);
    // At the threshold itself the class is on the boundary: not ample.
    doc["t"] = "2";
    auto boundary = write_temp("pepos_at_boundary.json", doc);
    CHECK(run_cli({"verify", boundary.string()}) == 1);
}

TEST_CASE("cones subcommand covers curve and toric bases") {
    json curve_doc = json::parse(R"json({
        "schema_version": "1",
        "query": "cones",
        "base": {"kind": "curve", "genus": 0},
        "bundle": {"kind": "hn_curve", "blocks": [[1, "3"], [1, "1"]]}
    })json");
    auto curve_path = write_temp("pepos_cones_curve.json", curve_doc);
    std::string output;
    CHECK(run_cli({"cones", curve_path.string()}, &output) == 0);
    CHECK(output.find("l_c = 3/1") != std::string::npos);
    CHECK(output.find("diagonal_incidence=yes") != std::string::npos);

    json toric_doc = json::parse(R"json({
        "schema_version": "1",
        "query": "cones",
        "base": {"kind": "toric", "fan": {"rays": [[1,0],[-1,1],[0,1],[0,-1]],
                                           "max_cones": [[0,2],[1,2],[1,3],[0,3]]}},
        "bundle": {"kind": "equivariant_toric", "rank": 2,
                   "restriction_table": {"w0": [1,2], "w1": [1,2], "w2": [1,2], "w3": [2,4]}}
    })json");
    auto toric_path = write_temp("pepos_cones_toric.json", toric_doc);
    CHECK(run_cli({"cones", toric_path.string()}, &output) == 0);
    CHECK(output.find("C_4") != std::string::npos); // C_0 plus one class per wall
}

TEST_CASE("abstract bases without families cannot run the direct criterion") {
    json doc = json::parse(R"json({
        "schema_version": "1",
        "base": {"kind": "abstract", "dim": 2, "picard_rank": 1, "canonical_class": ["0"]},
        "bundle": {"kind": "semistable_flat", "rank": 2, "det": ["1"], "c2_end_zero": true},
        "divisor": {"m": 1, "N": [0]},
        "certificates": [
            {"subject": "det.is_strictly_nef", "value": true, "provenance": "user"},
            {"subject": "N.is_nef", "value": true, "provenance": "zero class"}
        ]
    })json");
    auto path = write_temp("pepos_no_families.json", doc);
    CHECK(run_cli({"verify", path.string()}) == 3);
}

TEST_CASE("oracle-check and paper-examples subcommands") {
    std::string output;
    CHECK(run_cli({"oracle-check", "--grid", "p1:2:0:1"}, &output) == 0);
    CHECK(output.find("0 disagreements") != std::string::npos);
    CHECK(run_cli({"oracle-check", "--grid", "p3:2:0:1"}) == 2);
    CHECK(run_cli({"oracle-check", "--grid", "p1:4:0:1"}) == 2);
}
