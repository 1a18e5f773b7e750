#include "pepos/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "pepos/fixtures.hpp"
#include "pepos/io.hpp"
#include "pepos/oracle.hpp"

namespace pepos::cli {

namespace {

using io::json;

int verdict_exit_code(Verdict verdict) {
    switch (verdict) {
    case Verdict::verified: return 0;
    case Verdict::refuted_on_families:
    case Verdict::hypotheses_unmet: return 1;
    case Verdict::unknown: return 3;
    }
    return 2;
}

int tri_exit_code(Tri t) {
    switch (t) {
    case Tri::yes: return 0;
    case Tri::no: return 1;
    case Tri::unknown: return 3;
    }
    return 2;
}

io::ProblemDocument load_problem(const std::string& path, bool no_certificates) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw error("JSON parse error in '" + path + "': " + e.what());
    }
    io::ProblemDocument doc = io::parse_problem(j);
    if (no_certificates)
        doc.certificates.enabled = false;
    return doc;
}

void emit(const json& report, const std::string& json_path) {
    if (json_path.empty())
        return;
    std::ofstream file(json_path);
    if (!file)
        throw error("cannot write report file '" + json_path + "'");
    file << report.dump(2) << "\n";
}

void print_serrano(const SerranoReport& report, std::ostream& out) {
    out << "verdict:   " << to_string(report.verdict) << "\n";
    out << "route:     " << report.route << "\n";
    out << "soundness: " << to_string(report.soundness) << "\n";
    if (!report.strict_nef_route.empty())
        out << "D strictly nef via: " << report.strict_nef_route << "\n";
    if (report.threshold) {
        const auto& t = *report.threshold;
        if (!t.feasible)
            out << "threshold: infeasible (no t satisfies all conditions)\n";
        else if (t.t0)
            out << "threshold: ample exactly for t > " << fraction_string(*t.t0)
                << " (theorem bound t >= " << fraction_string(t.paper_bound) << ", attained "
                << (t.attained ? "yes" : "no") << ")\n";
        else
            out << "threshold: ample for t >= " << fraction_string(t.paper_bound)
                << " (by theorem; no sharper threshold computed)\n";
    }
    for (const auto& condition : report.conditions)
        out << "  condition [" << condition.label << "]: " << condition.poly.str() << " > 0\n";
    for (const auto& note : report.annotations)
        out << "  note: " << note << "\n";
    for (const auto& cert : report.certificates_used)
        out << "  certificate: " << cert.subject << " = " << (cert.value ? "true" : "false")
            << " (" << cert.provenance << ")\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

int cmd_verify_or_threshold(const std::string& path, const std::string& query_override,
                            bool no_certificates, const std::string& json_path, std::ostream& out) {
    auto start = std::chrono::steady_clock::now();
    io::ProblemDocument doc = load_problem(path, no_certificates);
    std::string query = query_override;
    if (query == "verify" && doc.query == "ample_at_t")
        query = "ample_at_t";
    doc.query = query;

    if (query == "ample_at_t") {
        if (!doc.t)
            throw error("query ample_at_t requires the field \"t\"");
        SerranoProblem problem = io::to_serrano(doc);
        PEDivisorClass adjoint = adjoint_class(problem.base, problem.bundle, problem.m,
                                               problem.n_class);
        PositivityReport report = is_ample(problem.base, problem.bundle, adjoint, *doc.t);
        json j = io::positivity_report_json(doc, report, query, *doc.t);
        j["timing_ms"] = elapsed_ms(start);
        emit(j, json_path);
        out << "K + tD at t = " << fraction_string(*doc.t) << ": "
            << (report.verdict ? "ample" : "not ample") << " (" << to_string(report.soundness)
            << ")\n";
        for (const auto& margin : report.margins)
            out << "  margin [" << margin.label << "]: " << fraction_string(margin.margin) << "\n";
        if (report.verdict)
            return report.soundness == Soundness::exact ? 0 : 3;
        return 1;
    }

    SerranoProblem problem = io::to_serrano(doc);
    SerranoReport report = verify_conjecture(problem);
    json j = io::report_json(doc, report);
    j["timing_ms"] = elapsed_ms(start);
    emit(j, json_path);
    print_serrano(report, out);
    return verdict_exit_code(report.verdict);
}

int cmd_cones(const std::string& path, bool no_certificates, const std::string& json_path,
              std::ostream& out) {
    io::ProblemDocument doc = load_problem(path, no_certificates);
    doc.query = "cones";
    ConeDescription ne = ne_generators(doc.base, doc.bundle);
    std::optional<ConeDescription> nef;
    std::optional<DualityReport> duality;
    if (doc.base.kind == BaseKind::curve) {
        nef = nef_generators_curve_base(doc.base, doc.bundle);
        if (auto ring = make_ring(doc.base, doc.bundle))
            duality = duality_check(doc.base, doc.bundle, *ring);
    }
    json j = io::cones_report_json(doc, ne, nef, duality);
    emit(j, json_path);
    out << "NE(P(E)) generators:\n";
    for (const auto& gen : ne.curve_generators)
        out << "  " << gen.provenance << "\n";
    if (nef) {
        out << "Nef(P(E)) generators:\n";
        for (const auto& gen : nef->divisor_generators)
            out << "  " << gen.str() << "\n";
    }
    if (duality)
        out << "duality: all_nonnegative=" << (duality->all_nonnegative ? "yes" : "no")
            << " diagonal_incidence=" << (duality->diagonal_incidence ? "yes" : "no") << "\n";
    return 0;
}

int cmd_anti_canonical(const std::string& path, bool no_certificates, const std::string& json_path,
                       std::ostream& out) {
    io::ProblemDocument doc = load_problem(path, no_certificates);
    doc.query = "anti_canonical";
    AntiCanonicalReport report = anti_canonical_nef(doc.base, doc.bundle);
    json j = io::anti_canonical_report_json(doc, report);
    emit(j, json_path);
    out << "-K_{P(E)} nef: " << to_string(report.verdict) << " (" << to_string(report.soundness)
        << ")\n";
    for (const auto& window : report.windows)
        out << "  [" << window.label << "] 0 <= " << fraction_string(window.value)
            << " <= " << fraction_string(window.upper) << " : " << (window.pass ? "pass" : "fail")
            << "\n";
    for (const auto& note : report.annotations)
        out << "  note: " << note << "\n";
    return tri_exit_code(report.verdict);
}

int cmd_paper_examples(bool no_certificates, const std::string& json_path, std::ostream& out) {
    auto results = fixtures::run_paper_examples(!no_certificates);
    bool all_pass = true;
    json j = json::array();
    for (const auto& result : results) {
        out << (result.pass ? "PASS " : "FAIL ") << result.name << "\n";
        for (const auto& check : result.checks)
            out << "    " << check << "\n";
        if (!result.pass)
            all_pass = false;
        j.push_back(json{{"name", result.name}, {"pass", result.pass}, {"checks", result.checks}});
    }
    emit(json{{"schema_version", "1"}, {"query", "paper_examples"}, {"results", std::move(j)}},
         json_path);
    out << (all_pass ? "all examples pass" : "FAILURES present") << "\n";
    return all_pass ? 0 : 1;
}

int parallelism_from_env() {
    const char* env = std::getenv("PEPOS_JOBS");
    if (!env)
        return 1;
    int jobs = std::atoi(env);
    if (jobs <= 0)
        jobs = static_cast<int>(std::thread::hardware_concurrency());
    return jobs > 0 ? jobs : 1;
}

int cmd_oracle_check(const std::string& grid_spec, const std::string& json_path,
                     std::ostream& out) {
    oracle::OracleGrid grid = oracle::OracleGrid::parse(grid_spec);
    oracle::OracleReport report = oracle::run_oracle_check(grid, parallelism_from_env());
    json disagreements = json::array();
    for (const auto& d : report.disagreements)
        disagreements.push_back(d.instance);
    emit(json{{"schema_version", "1"},
              {"query", "oracle_check"},
              {"bundles", report.bundles},
              {"instances", report.instances},
              {"disagreements", std::move(disagreements)}},
         json_path);
    out << "oracle check: " << report.instances << " instances over " << report.bundles
        << " bundles, " << report.disagreements.size() << " disagreements\n";
    for (const auto& d : report.disagreements)
        out << "  DISAGREE " << d.instance << "\n";
    return report.disagreements.empty() ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact positivity and Serrano-threshold checks on projective bundles"};
    app.require_subcommand(1);
    app.fallthrough(); // global --json / --no-certificates may follow the subcommand
    std::string json_path;
    bool no_certificates = false;
    app.add_option("--json", json_path, "write the machine-readable report to this file");
    app.add_flag("--no-certificates", no_certificates,
                 "ignore user assertions; certified verdicts become unknown");

    std::string verify_file, threshold_file, cones_file, anti_file, grid_spec = "default";
    CLI::App* verify = app.add_subcommand("verify", "verify a Serrano problem file");
    verify->add_option("file", verify_file, "problem JSON")->required();
    CLI::App* thresh = app.add_subcommand("threshold", "compute the exact ampleness threshold");
    thresh->add_option("file", threshold_file, "problem JSON")->required();
    CLI::App* cones_cmd = app.add_subcommand("cones", "print cone generators and duality data");
    cones_cmd->add_option("file", cones_file, "problem JSON")->required();
    CLI::App* anti = app.add_subcommand("anti-canonical", "nefness window for -K_{P(E)}");
    anti->add_option("file", anti_file, "problem JSON")->required();
    app.add_subcommand("paper-examples", "run the embedded example corpus");
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-check", "compare the criterion against the toric fan oracle");
    oracle_cmd->add_option("--grid", grid_spec,
                           "grid spec base:rank:twist_min:twist_max[,...] or 'default'");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed())
            return cmd_verify_or_threshold(verify_file, "verify", no_certificates, json_path, out);
        if (thresh->parsed())
            return cmd_verify_or_threshold(threshold_file, "threshold", no_certificates, json_path,
                                           out);
        if (cones_cmd->parsed())
            return cmd_cones(cones_file, no_certificates, json_path, out);
        if (anti->parsed())
            return cmd_anti_canonical(anti_file, no_certificates, json_path, out);
        if (app.get_subcommand("paper-examples")->parsed())
            return cmd_paper_examples(no_certificates, json_path, out);
        if (oracle_cmd->parsed())
            return cmd_oracle_check(grid_spec, json_path, out);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace pepos::cli
