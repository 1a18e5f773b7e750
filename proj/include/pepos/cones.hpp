#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pepos/base.hpp"
#include "pepos/bundle.hpp"
#include "pepos/certificates.hpp"
#include "pepos/pbundle.hpp"
#include "pepos/rational.hpp"

namespace pepos {

enum class Soundness { exact, sufficient_only };
std::string to_string(Soundness s);

struct MarginEntry {
    std::string label; // "y0" or the family label
    Rational margin;
    long member_count = 1;
};

/// Membership report for the nef / ample criterion: y0 > 0 (>= 0) and
/// y0 mu_min(E|_C) + gamma.C > 0 (>= 0) per family. Soundness mirrors the
/// family exactness tag; violating families are listed as witnesses.
struct PositivityReport {
    bool verdict = false;
    Soundness soundness = Soundness::exact;
    std::vector<MarginEntry> margins;
    std::vector<std::string> witnesses; // families with violating margins
};

PositivityReport is_ample(const BaseVariety& base, const BundleDescriptor& bundle,
                          const PEDivisorClass& cls, std::optional<Rational> t = std::nullopt);
PositivityReport is_nef(const BaseVariety& base, const BundleDescriptor& bundle,
                        const PEDivisorClass& cls, std::optional<Rational> t = std::nullopt);

/// Sufficient condition for strict nefness of m xi + pi^* N: m > 0, E
/// strictly nef, N nef. Never returns "no".
Tri is_strictly_nef_sufficient(const BaseVariety& base, const BundleDescriptor& bundle,
                               const Int& m, const std::vector<Rational>& n_class,
                               const CertificateStore* certs = nullptr,
                               std::vector<CertificateUse>* used = nullptr);

/// Nefness of a base divisor class, computed where the base supports it
/// and certified otherwise.
Tri base_class_nef(const BaseVariety& base, const std::vector<Rational>& coefficients,
                   const CertificateStore* certs = nullptr,
                   std::vector<CertificateUse>* used = nullptr,
                   const char* subject = cert_subject::n_nef);

struct ConeGenerator {
    PECurveClass cls;
    std::string provenance; // family / wall and its l_c or m_i value
};

struct ConeDescription {
    std::string side; // "curves" or "divisors"
    std::vector<ConeGenerator> curve_generators;
    std::vector<PEDivisorClass> divisor_generators;
};

/// NE(P(E)) generators: {F, xi^{r-1} - l_c xi^{r-2}F} on a curve base;
/// {C_0, C_1, ..., C_m} over invariant curves for toric / P^n routing.
ConeDescription ne_generators(const BaseVariety& base, const BundleDescriptor& bundle);

/// Nef(P(E)) generators {xi - mu_min f, f} on a curve base.
ConeDescription nef_generators_curve_base(const BaseVariety& base, const BundleDescriptor& bundle);

struct DualityReport {
    std::vector<std::vector<Rational>> matrix; // nef generators x NE generators
    bool all_nonnegative = false;
    bool diagonal_incidence = false; // identity pattern after normalization
};

/// Pairs every nef generator against every NE generator through the
/// intersection ring (curve base).
DualityReport duality_check(const BaseVariety& base, const BundleDescriptor& bundle,
                            const IntersectionRing& ring);

} // namespace pepos
