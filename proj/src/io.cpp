#include "pepos/io.hpp"

#include <set>

namespace pepos::io {

namespace {

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw error(context + ": expected a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key))
            throw error(context + ": unknown field '" + key + "'");
}

const json& require(const json& j, const std::string& context, const char* key) {
    if (!j.contains(key))
        throw error(context + ": missing field '" + key + "'");
    return j.at(key);
}

long long int_from_json(const json& j, const std::string& context) {
    if (!j.is_number_integer())
        throw error(context + ": expected an integer");
    return j.get<long long>();
}

std::vector<Rational> rational_vector(const json& j, const std::string& context) {
    if (!j.is_array())
        throw error(context + ": expected an array");
    std::vector<Rational> out;
    for (const auto& item : j)
        out.push_back(rational_from_json(item, context));
    return out;
}

Assertion assertion_from_json(const json& j, const std::string& context) {
    check_keys(j, context, {"value", "provenance"});
    Assertion a;
    if (!require(j, context, "value").is_boolean())
        throw error(context + ": 'value' must be a boolean");
    a.value = j.at("value").get<bool>();
    a.provenance = require(j, context, "provenance").get<std::string>();
    return a;
}

PositivityAssertions assertions_from_json(const json& j, const std::string& context) {
    check_keys(j, context, {"is_nef", "is_ample", "is_strictly_nef"});
    PositivityAssertions out;
    if (j.contains("is_nef"))
        out.is_nef = assertion_from_json(j.at("is_nef"), context + ".is_nef");
    if (j.contains("is_ample"))
        out.is_ample = assertion_from_json(j.at("is_ample"), context + ".is_ample");
    if (j.contains("is_strictly_nef"))
        out.is_strictly_nef = assertion_from_json(j.at("is_strictly_nef"), context + ".is_strictly_nef");
    return out;
}

json assertion_json(const Assertion& a) {
    return json{{"value", a.value}, {"provenance", a.provenance}};
}

json assertions_json(const PositivityAssertions& a) {
    json j = json::object();
    if (a.is_nef) j["is_nef"] = assertion_json(*a.is_nef);
    if (a.is_ample) j["is_ample"] = assertion_json(*a.is_ample);
    if (a.is_strictly_nef) j["is_strictly_nef"] = assertion_json(*a.is_strictly_nef);
    return j;
}

toric::Fan fan_from_json(const json& j) {
    check_keys(j, "base.fan", {"rays", "max_cones"});
    toric::Fan fan;
    const json& rays = require(j, "base.fan", "rays");
    if (!rays.is_array() || rays.empty())
        throw error("base.fan.rays: expected a nonempty array");
    for (const auto& ray : rays) {
        if (!ray.is_array())
            throw error("base.fan.rays: each ray is an integer array");
        toric::LatticeVector v;
        for (const auto& c : ray)
            v.emplace_back(int_from_json(c, "base.fan.rays"));
        fan.rays.push_back(std::move(v));
    }
    fan.lattice_dim = static_cast<int>(fan.rays.front().size());
    for (const auto& cone : require(j, "base.fan", "max_cones")) {
        std::vector<int> indices;
        for (const auto& c : cone)
            indices.push_back(static_cast<int>(int_from_json(c, "base.fan.max_cones")));
        fan.max_cones.push_back(std::move(indices));
    }
    return fan;
}

json fan_json(const toric::Fan& fan) {
    json rays = json::array();
    for (const auto& ray : fan.rays) {
        json r = json::array();
        for (const Int& c : ray)
            r.push_back(c.convert_to<long long>());
        rays.push_back(std::move(r));
    }
    json cones = json::array();
    for (const auto& cone : fan.max_cones)
        cones.push_back(cone);
    return json{{"rays", std::move(rays)}, {"max_cones", std::move(cones)}};
}

HNType hn_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty())
        throw error(context + ": expected a nonempty array of [rank, slope] pairs");
    HNType hn;
    for (const auto& block : j) {
        if (!block.is_array() || block.size() != 2)
            throw error(context + ": each block is [rank, slope]");
        HNBlock b;
        b.rank = static_cast<int>(int_from_json(block.at(0), context));
        b.slope = rational_from_json(block.at(1), context);
        hn.blocks.push_back(std::move(b));
    }
    hn.validate();
    return hn;
}

json hn_json(const HNType& hn) {
    json out = json::array();
    for (const auto& block : hn.blocks)
        out.push_back(json::array({block.rank, rational_json(block.slope)}));
    return out;
}

CurveFamily family_from_json(const json& j, int picard_rank, const std::string& context) {
    check_keys(j, context,
               {"label", "degree_data", "canonical_degree", "exactness", "line_degree",
                "restriction"});
    CurveFamily family;
    family.label = require(j, context, "label").get<std::string>();
    family.degree_data = rational_vector(require(j, context, "degree_data"), context + ".degree_data");
    if (family.degree_data.size() != static_cast<size_t>(picard_rank))
        throw error(context + ": degree_data length != picard_rank");
    family.canonical_degree = rational_from_json(require(j, context, "canonical_degree"),
                                                 context + ".canonical_degree");
    std::string exactness = require(j, context, "exactness").get<std::string>();
    if (exactness == "cone_generating")
        family.exactness = Exactness::cone_generating;
    else if (exactness == "sufficient_only")
        family.exactness = Exactness::sufficient_only;
    else
        throw error(context + ": exactness must be cone_generating or sufficient_only");
    if (j.contains("line_degree"))
        family.line_degree = rational_from_json(j.at("line_degree"), context + ".line_degree");
    if (j.contains("restriction")) {
        check_keys(j.at("restriction"), context + ".restriction", {"hn"});
        family.declared_restriction =
            hn_from_json(require(j.at("restriction"), context + ".restriction", "hn"),
                         context + ".restriction.hn");
    }
    return family;
}

json family_json(const CurveFamily& family) {
    json out{{"label", family.label},
             {"degree_data", json::array()},
             {"canonical_degree", rational_json(family.canonical_degree)},
             {"exactness", to_string(family.exactness)}};
    for (const auto& d : family.degree_data)
        out["degree_data"].push_back(rational_json(d));
    if (family.line_degree != 1)
        out["line_degree"] = rational_json(family.line_degree);
    if (family.declared_restriction)
        out["restriction"] = json{{"hn", hn_json(*family.declared_restriction)}};
    return out;
}

BaseVariety base_from_json(const json& j) {
    std::string kind = require(j, "base", "kind").get<std::string>();
    if (kind == "curve") {
        check_keys(j, "base", {"kind", "genus"});
        return make_curve(static_cast<int>(int_from_json(require(j, "base", "genus"), "base.genus")));
    }
    if (kind == "projective_space") {
        check_keys(j, "base", {"kind", "dim", "serrano_known"});
        BaseVariety base =
            make_projective_space(static_cast<int>(int_from_json(require(j, "base", "dim"), "base.dim")));
        if (j.contains("serrano_known"))
            base.serrano_known = j.at("serrano_known").get<bool>();
        return base;
    }
    if (kind == "toric") {
        check_keys(j, "base", {"kind", "fan", "serrano_known"});
        BaseVariety base = make_toric(fan_from_json(require(j, "base", "fan")));
        if (j.contains("serrano_known"))
            base.serrano_known = j.at("serrano_known").get<bool>();
        return base;
    }
    if (kind == "abstract") {
        check_keys(j, "base",
                   {"kind", "dim", "picard_rank", "serrano_known", "canonical_class", "families"});
        int dim = static_cast<int>(int_from_json(require(j, "base", "dim"), "base.dim"));
        int rho = static_cast<int>(
            int_from_json(require(j, "base", "picard_rank"), "base.picard_rank"));
        bool known = j.contains("serrano_known") && j.at("serrano_known").get<bool>();
        std::vector<CurveFamily> families;
        if (j.contains("families")) {
            int index = 0;
            for (const auto& f : j.at("families"))
                families.push_back(
                    family_from_json(f, rho, "base.families[" + std::to_string(index++) + "]"));
        }
        std::optional<std::vector<Rational>> canonical;
        if (j.contains("canonical_class"))
            canonical = rational_vector(j.at("canonical_class"), "base.canonical_class");
        return make_abstract(dim, rho, known, std::move(families), std::move(canonical));
    }
    throw error("base.kind must be curve, projective_space, toric or abstract");
}

json base_json(const BaseVariety& base) {
    switch (base.kind) {
    case BaseKind::curve:
        return json{{"kind", "curve"}, {"genus", base.genus}};
    case BaseKind::projective_space: {
        json out{{"kind", "projective_space"}, {"dim", base.dim}};
        if (base.serrano_known)
            out["serrano_known"] = true;
        return out;
    }
    case BaseKind::toric: {
        json out{{"kind", "toric"}, {"fan", fan_json(*base.fan)}};
        if (base.serrano_known)
            out["serrano_known"] = true;
        return out;
    }
    case BaseKind::abstract_base: {
        json out{{"kind", "abstract"}, {"dim", base.dim}, {"picard_rank", base.picard_rank}};
        if (base.serrano_known)
            out["serrano_known"] = true;
        if (base.abstract_canonical) {
            json k = json::array();
            for (const auto& c : *base.abstract_canonical)
                k.push_back(rational_json(c));
            out["canonical_class"] = std::move(k);
        }
        if (!base.abstract_families.empty()) {
            json families = json::array();
            for (const auto& family : base.abstract_families)
                families.push_back(family_json(family));
            out["families"] = std::move(families);
        }
        return out;
    }
    }
    throw error("unreachable");
}

BundleDescriptor bundle_from_json(const json& j, const BaseVariety& base) {
    std::string kind = require(j, "bundle", "kind").get<std::string>();
    BundleDescriptor bundle;
    if (kind == "split_pn") {
        check_keys(j, "bundle", {"kind", "twists", "assertions"});
        std::vector<Int> twists;
        for (const auto& a : require(j, "bundle", "twists"))
            twists.emplace_back(int_from_json(a, "bundle.twists"));
        bundle = make_split(std::move(twists));
    } else if (kind == "tangent_pn") {
        check_keys(j, "bundle", {"kind", "twist", "assertions"});
        bundle = make_tangent(base.dim);
        if (j.contains("twist"))
            bundle = twist(bundle, Int(int_from_json(j.at("twist"), "bundle.twist")));
    } else if (kind == "hn_curve") {
        check_keys(j, "bundle", {"kind", "blocks", "assertions"});
        bundle = make_hn_curve(hn_from_json(require(j, "bundle", "blocks"), "bundle.blocks"));
    } else if (kind == "semistable_flat") {
        check_keys(j, "bundle", {"kind", "rank", "det", "c2_end_zero", "assertions"});
        int rank = static_cast<int>(int_from_json(require(j, "bundle", "rank"), "bundle.rank"));
        auto det = rational_vector(require(j, "bundle", "det"), "bundle.det");
        if (det.size() != base.coefficient_length())
            throw error("bundle.det: length must match the base coefficient length");
        bool flat = require(j, "bundle", "c2_end_zero").get<bool>();
        bundle = make_semistable_flat(rank, std::move(det), flat);
    } else if (kind == "equivariant_toric") {
        check_keys(j, "bundle", {"kind", "rank", "restriction_table", "assertions"});
        int rank = static_cast<int>(int_from_json(require(j, "bundle", "rank"), "bundle.rank"));
        std::map<std::string, std::vector<Int>> table;
        for (const auto& [wall, splitting] : require(j, "bundle", "restriction_table").items()) {
            std::vector<Int> degrees;
            for (const auto& d : splitting)
                degrees.emplace_back(int_from_json(d, "bundle.restriction_table"));
            table.emplace(wall, std::move(degrees));
        }
        bundle = make_equivariant(rank, std::move(table));
    } else if (kind == "chern_fixture") {
        check_keys(j, "bundle", {"kind", "rank", "c1", "c2", "twist", "assertions"});
        ChernData chern;
        chern.rank = static_cast<int>(int_from_json(require(j, "bundle", "rank"), "bundle.rank"));
        chern.c1 = Int(int_from_json(require(j, "bundle", "c1"), "bundle.c1"));
        chern.c2 = Int(int_from_json(require(j, "bundle", "c2"), "bundle.c2"));
        chern.base_dim = base.dim;
        bundle = make_chern_fixture(chern);
        if (j.contains("twist"))
            bundle = twist(bundle, Int(int_from_json(j.at("twist"), "bundle.twist")));
    } else {
        throw error("bundle.kind '" + kind + "' is not recognized");
    }
    if (j.contains("assertions"))
        bundle.assertions = assertions_from_json(j.at("assertions"), "bundle.assertions");
    return bundle;
}

json bundle_json(const BundleDescriptor& bundle) {
    json out;
    switch (bundle.kind) {
    case BundleKind::split_pn: {
        out = json{{"kind", "split_pn"}, {"twists", json::array()}};
        for (const Int& a : bundle.twists)
            out["twists"].push_back(a.convert_to<long long>());
        break;
    }
    case BundleKind::tangent_pn:
        out = json{{"kind", "tangent_pn"}};
        if (bundle.tangent_twist != 0)
            out["twist"] = bundle.tangent_twist.convert_to<long long>();
        break;
    case BundleKind::hn_curve:
        out = json{{"kind", "hn_curve"}, {"blocks", hn_json(bundle.hn)}};
        break;
    case BundleKind::semistable_flat: {
        out = json{{"kind", "semistable_flat"},
                   {"rank", bundle.rank},
                   {"det", json::array()},
                   {"c2_end_zero", bundle.c2_end_zero}};
        for (const auto& c : bundle.det_coeffs)
            out["det"].push_back(rational_json(c));
        break;
    }
    case BundleKind::equivariant_toric: {
        out = json{{"kind", "equivariant_toric"}, {"rank", bundle.rank}};
        json table = json::object();
        for (const auto& [wall, splitting] : bundle.restriction_table) {
            json degrees = json::array();
            for (const Int& d : splitting)
                degrees.push_back(d.convert_to<long long>());
            table[wall] = std::move(degrees);
        }
        out["restriction_table"] = std::move(table);
        break;
    }
    case BundleKind::chern_fixture:
        out = json{{"kind", "chern_fixture"},
                   {"rank", bundle.rank},
                   {"c1", bundle.chern->c1.convert_to<long long>()},
                   {"c2", bundle.chern->c2.convert_to<long long>()}};
        break;
    }
    if (!bundle.assertions.empty())
        out["assertions"] = assertions_json(bundle.assertions);
    return out;
}

const std::set<std::string> kQueries = {"verify",         "threshold",   "ample_at_t",
                                        "cones",          "anti_canonical", "oracle_check"};

} // namespace

json rational_json(const Rational& value) {
    return fraction_string(value);
}

Rational rational_from_json(const json& j, const std::string& context) {
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw error(context + ": expected an integer or a fraction string \"p/q\"");
}

ProblemDocument parse_problem(const json& j) {
    check_keys(j, "problem",
               {"schema_version", "query", "t", "base", "bundle", "divisor", "route",
                "certificates"});
    ProblemDocument doc;
    doc.schema_version = require(j, "problem", "schema_version").get<std::string>();
    if (doc.schema_version != "1")
        throw error("unsupported schema_version '" + doc.schema_version + "'");
    if (j.contains("query")) {
        doc.query = j.at("query").get<std::string>();
        if (!kQueries.count(doc.query))
            throw error("unknown query '" + doc.query + "'");
    }
    if (j.contains("t"))
        doc.t = rational_from_json(j.at("t"), "t");
    doc.base = base_from_json(require(j, "problem", "base"));
    doc.bundle = bundle_from_json(require(j, "problem", "bundle"), doc.base);
    if (j.contains("divisor")) {
        const json& d = j.at("divisor");
        check_keys(d, "divisor", {"m", "N"});
        doc.m = Int(int_from_json(require(d, "divisor", "m"), "divisor.m"));
        doc.n_class = rational_vector(require(d, "divisor", "N"), "divisor.N");
        if (doc.n_class.size() != doc.base.coefficient_length())
            throw error("divisor.N: length must match the base coefficient length");
        doc.has_divisor = true;
    }
    if (j.contains("route"))
        doc.route = j.at("route").get<std::string>();
    if (j.contains("certificates")) {
        int index = 0;
        for (const auto& c : j.at("certificates")) {
            std::string context = "certificates[" + std::to_string(index++) + "]";
            check_keys(c, context, {"subject", "value", "provenance"});
            Certificate cert;
            cert.subject = require(c, context, "subject").get<std::string>();
            if (!require(c, context, "value").is_boolean())
                throw error(context + ": 'value' must be a boolean");
            cert.value = c.at("value").get<bool>();
            cert.provenance = require(c, context, "provenance").get<std::string>();
            doc.certificates.entries.push_back(std::move(cert));
        }
    }
    return doc;
}

json serialize_problem(const ProblemDocument& doc) {
    json out{{"schema_version", doc.schema_version},
             {"query", doc.query},
             {"base", base_json(doc.base)},
             {"bundle", bundle_json(doc.bundle)}};
    if (doc.t)
        out["t"] = rational_json(*doc.t);
    if (doc.has_divisor) {
        json n = json::array();
        for (const auto& c : doc.n_class)
            n.push_back(rational_json(c));
        out["divisor"] = json{{"m", doc.m.convert_to<long long>()}, {"N", std::move(n)}};
    }
    if (doc.route)
        out["route"] = *doc.route;
    if (!doc.certificates.entries.empty()) {
        json certs = json::array();
        for (const auto& cert : doc.certificates.entries)
            certs.push_back(json{{"subject", cert.subject},
                                 {"value", cert.value},
                                 {"provenance", cert.provenance}});
        out["certificates"] = std::move(certs);
    }
    return out;
}

SerranoProblem to_serrano(const ProblemDocument& doc) {
    if (!doc.has_divisor)
        throw error("this query requires a 'divisor' object {m, N}");
    SerranoProblem problem;
    problem.base = doc.base;
    problem.bundle = doc.bundle;
    problem.m = doc.m;
    problem.n_class = doc.n_class;
    problem.route = doc.route;
    problem.certificates = doc.certificates;
    problem.validate();
    return problem;
}

namespace {

json conditions_json(const std::vector<ConditionLine>& conditions) {
    json out = json::array();
    for (const auto& condition : conditions)
        out.push_back(json{{"label", condition.label},
                           {"constant", rational_json(condition.poly.constant)},
                           {"slope", rational_json(condition.poly.slope)}});
    return out;
}

json certificates_used_json(const std::vector<CertificateUse>& used) {
    json out = json::array();
    for (const auto& u : used)
        out.push_back(json{{"subject", u.subject}, {"value", u.value}, {"provenance", u.provenance}});
    return out;
}

json pe_class_json(const PEDivisorClass& cls) {
    json base = json::array();
    for (const auto& c : cls.base_part)
        base.push_back(json::array({rational_json(c.constant), rational_json(c.slope)}));
    return json{{"xi", json::array({rational_json(cls.xi.constant), rational_json(cls.xi.slope)})},
                {"base", std::move(base)}};
}

} // namespace

json report_json(const ProblemDocument& doc, const SerranoReport& report) {
    json out{{"schema_version", "1"},
             {"problem", serialize_problem(doc)},
             {"query", doc.query},
             {"verdict", to_string(report.verdict)},
             {"soundness", to_string(report.soundness)},
             {"route", report.route},
             {"annotations", report.annotations},
             {"conditions", conditions_json(report.conditions)},
             {"certificates_used", certificates_used_json(report.certificates_used)}};
    if (!report.strict_nef_route.empty())
        out["strict_nef_route"] = report.strict_nef_route;
    if (report.threshold) {
        const auto& t = *report.threshold;
        json threshold{{"attained", t.attained},
                       {"paper_bound", numerator(t.paper_bound).convert_to<long long>()},
                       {"feasible", t.feasible}};
        if (t.t0)
            threshold["t0"] = rational_json(*t.t0);
        else
            threshold["t0"] = nullptr;
        if (!t.feasible)
            threshold["infeasible_conditions"] = t.infeasible_labels;
        out["threshold"] = std::move(threshold);
    }
    return out;
}

json positivity_report_json(const ProblemDocument& doc, const PositivityReport& report,
                            const std::string& query, const Rational& t) {
    json margins = json::array();
    for (const auto& margin : report.margins)
        margins.push_back(json{{"label", margin.label},
                               {"margin", rational_json(margin.margin)},
                               {"member_count", margin.member_count}});
    return json{{"schema_version", "1"},
                {"problem", serialize_problem(doc)},
                {"query", query},
                {"t", rational_json(t)},
                {"verdict", report.verdict ? "ample" : "not_ample"},
                {"soundness", to_string(report.soundness)},
                {"margins", std::move(margins)},
                {"witnesses", report.witnesses}};
}

json cones_report_json(const ProblemDocument& doc, const ConeDescription& ne,
                       const std::optional<ConeDescription>& nef,
                       const std::optional<DualityReport>& duality) {
    json generators = json::array();
    for (const auto& gen : ne.curve_generators)
        generators.push_back(json{{"provenance", gen.provenance},
                                  {"family", gen.cls.family_label},
                                  {"l_c", rational_json(gen.cls.l_c)}});
    json out{{"schema_version", "1"},
             {"problem", serialize_problem(doc)},
             {"query", "cones"},
             {"ne_generators", std::move(generators)}};
    if (nef) {
        json nef_gens = json::array();
        for (const auto& gen : nef->divisor_generators)
            nef_gens.push_back(pe_class_json(gen));
        out["nef_generators"] = std::move(nef_gens);
    }
    if (duality) {
        json matrix = json::array();
        for (const auto& row : duality->matrix) {
            json r = json::array();
            for (const auto& value : row)
                r.push_back(rational_json(value));
            matrix.push_back(std::move(r));
        }
        out["duality"] = json{{"matrix", std::move(matrix)},
                              {"all_nonnegative", duality->all_nonnegative},
                              {"diagonal_incidence", duality->diagonal_incidence}};
    }
    return out;
}

json anti_canonical_report_json(const ProblemDocument& doc, const AntiCanonicalReport& report) {
    json windows = json::array();
    for (const auto& window : report.windows)
        windows.push_back(json{{"label", window.label},
                               {"value", rational_json(window.value)},
                               {"upper", rational_json(window.upper)},
                               {"pass", window.pass}});
    return json{{"schema_version", "1"},
                {"problem", serialize_problem(doc)},
                {"query", "anti_canonical"},
                {"verdict", to_string(report.verdict)},
                {"soundness", to_string(report.soundness)},
                {"windows", std::move(windows)},
                {"annotations", report.annotations}};
}

} // namespace pepos::io
