#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pepos/certificates.hpp"
#include "pepos/serrano.hpp"

namespace pepos::io {

using json = nlohmann::json;

/// A parsed problem file (schema_version "1"). Unknown fields are
/// rejected; rationals are fraction strings with integers accepted as
/// shorthand.
struct ProblemDocument {
    std::string schema_version = "1";
    std::string query = "verify";
    std::optional<Rational> t;
    BaseVariety base;
    BundleDescriptor bundle;
    bool has_divisor = false;
    Int m{1};
    std::vector<Rational> n_class;
    std::optional<std::string> route;
    CertificateStore certificates;
};

ProblemDocument parse_problem(const json& j);

/// Canonical serialization: sorted keys, rationals as "p/q" strings.
/// parse -> serialize is the identity on canonicalized documents.
json serialize_problem(const ProblemDocument& doc);

SerranoProblem to_serrano(const ProblemDocument& doc);

json rational_json(const Rational& value);
Rational rational_from_json(const json& j, const std::string& context);

json report_json(const ProblemDocument& doc, const SerranoReport& report);
json positivity_report_json(const ProblemDocument& doc, const PositivityReport& report,
                            const std::string& query, const Rational& t);
json cones_report_json(const ProblemDocument& doc, const ConeDescription& ne,
                       const std::optional<ConeDescription>& nef,
                       const std::optional<DualityReport>& duality);
json anti_canonical_report_json(const ProblemDocument& doc, const AntiCanonicalReport& report);

} // namespace pepos::io
