#include "pepos/cones.hpp"

namespace pepos {

std::string to_string(Soundness s) {
    return s == Soundness::exact ? "exact" : "sufficient_only";
}

namespace {

PositivityReport criterion_check(const BaseVariety& base, const BundleDescriptor& bundle,
                                 const PEDivisorClass& cls, std::optional<Rational> t,
                                 bool strict) {
    PEDivisorClass evaluated = t ? cls.at(*t) : cls;
    if (!evaluated.t_free())
        throw error("class depends on t and no evaluation point was supplied");
    if (evaluated.base_part.size() != base.coefficient_length())
        throw error("class has " + std::to_string(evaluated.base_part.size()) +
                    " base coefficients, base expects " +
                    std::to_string(base.coefficient_length()));

    std::vector<Rational> gamma;
    gamma.reserve(evaluated.base_part.size());
    for (const auto& c : evaluated.base_part)
        gamma.push_back(c.constant);
    const Rational y0 = evaluated.xi.constant;

    PositivityReport report;
    report.verdict = true;
    report.margins.push_back(MarginEntry{"y0", y0, 1});
    if (strict ? y0 <= 0 : y0 < 0) {
        report.verdict = false;
        report.witnesses.push_back("y0");
    }

    auto families = test_curve_families(base, bundle);
    if (families.empty())
        throw error("no curve families available for this base/bundle pair");
    bool all_exact = true;
    for (const auto& family : families) {
        if (family.exactness != Exactness::cone_generating)
            all_exact = false;
        Rational margin = y0 * slopes(bundle, family).mu_min + family.pair_with(gamma);
        if (strict ? margin <= 0 : margin < 0) {
            report.verdict = false;
            report.witnesses.push_back(family.label);
        }
        report.margins.push_back(MarginEntry{family.label, std::move(margin), family.member_count});
    }
    report.soundness = all_exact ? Soundness::exact : Soundness::sufficient_only;
    return report;
}

} // namespace

PositivityReport is_ample(const BaseVariety& base, const BundleDescriptor& bundle,
                          const PEDivisorClass& cls, std::optional<Rational> t) {
    return criterion_check(base, bundle, cls, t, true);
}

PositivityReport is_nef(const BaseVariety& base, const BundleDescriptor& bundle,
                        const PEDivisorClass& cls, std::optional<Rational> t) {
    return criterion_check(base, bundle, cls, t, false);
}

Tri base_class_nef(const BaseVariety& base, const std::vector<Rational>& coefficients,
                   const CertificateStore* certs, std::vector<CertificateUse>* used,
                   const char* subject) {
    if (coefficients.size() != base.coefficient_length())
        throw error("base divisor class length mismatch");
    bool zero_class = true;
    for (const auto& c : coefficients)
        if (c != 0) zero_class = false;
    if (zero_class)
        return Tri::yes;
    switch (base.kind) {
    case BaseKind::curve:
    case BaseKind::projective_space:
        return coefficients[0] >= 0 ? Tri::yes : Tri::no;
    case BaseKind::toric: {
        toric::ToricDivisor divisor{coefficients};
        for (const auto& wall : base.fan_walls)
            if (toric::intersect(*base.fan, divisor, wall) < 0)
                return Tri::no;
        return Tri::yes; // toric Kleiman: invariant curves decide nefness
    }
    case BaseKind::abstract_base: {
        for (const auto& family : base.abstract_families)
            if (family.pair_with(coefficients) < 0)
                return Tri::no;
        if (certs) {
            if (auto cert = certs->lookup(subject, used))
                return *cert ? Tri::yes : Tri::no;
        }
        bool exact = !base.abstract_families.empty();
        for (const auto& family : base.abstract_families)
            if (family.exactness != Exactness::cone_generating)
                exact = false;
        return exact ? Tri::yes : Tri::unknown;
    }
    }
    return Tri::unknown;
}

Tri is_strictly_nef_sufficient(const BaseVariety& base, const BundleDescriptor& bundle,
                               const Int& m, const std::vector<Rational>& n_class,
                               const CertificateStore* certs, std::vector<CertificateUse>* used) {
    if (m <= 0)
        return Tri::unknown; // wrong shape for this criterion
    Tri bundle_sn = positivity(bundle, base, certs ? certs->enabled : true).strictly_nef;
    if (bundle_sn == Tri::unknown && bundle.kind == BundleKind::semistable_flat &&
        bundle.c2_end_zero) {
        std::optional<bool> det_cert;
        if (certs)
            det_cert = certs->lookup(cert_subject::det_strictly_nef, used);
        bundle_sn = strictly_nef_from_semistable(bundle, base, det_cert);
    }
    // Certificates fill unknowns; computed exact verdicts stand. Overrides
    // go through the descriptor's positivity_assertions.
    if (bundle_sn == Tri::unknown && certs) {
        if (auto cert = certs->lookup(cert_subject::bundle_strictly_nef, used))
            bundle_sn = *cert ? Tri::yes : Tri::no;
    }
    if (bundle_sn != Tri::yes)
        return Tri::unknown;
    if (base_class_nef(base, n_class, certs, used) != Tri::yes)
        return Tri::unknown;
    return Tri::yes;
}

ConeDescription ne_generators(const BaseVariety& base, const BundleDescriptor& bundle) {
    ConeDescription cone;
    cone.side = "curves";
    auto families = test_curve_families(base, bundle);
    switch (base.kind) {
    case BaseKind::curve: {
        const CurveFamily& family = families.at(0);
        Slopes s = slopes(bundle, family);
        Rational deg = restrict_to_curve(bundle, family).total_degree();
        Rational l_c = deg - s.mu_min;
        PECurveClass fiber;
        fiber.basis = CurveBasis::fiber_line;
        fiber.fiber_coeff = 1;
        fiber.section_coeff = 0;
        fiber.l_c = l_c;
        fiber.family_label = family.label;
        PECurveClass section;
        section.basis = CurveBasis::section_type;
        section.fiber_coeff = 0;
        section.section_coeff = 1;
        section.l_c = l_c;
        section.family_label = family.label;
        cone.curve_generators.push_back(
            ConeGenerator{fiber, "xi^{r-2}F"});
        cone.curve_generators.push_back(
            ConeGenerator{section, "xi^{r-1} - l_c xi^{r-2}F, l_c = " + fraction_string(l_c) +
                                       " on " + family.label});
        return cone;
    }
    case BaseKind::projective_space:
    case BaseKind::toric: {
        PECurveClass c0;
        c0.basis = CurveBasis::toric_generator;
        c0.toric_index = 0;
        c0.fiber_coeff = 1;
        c0.l_c = 0;
        c0.family_label = "fiber";
        cone.curve_generators.push_back(ConeGenerator{c0, "C_0 (line in a fiber)"});
        int index = 1;
        for (const auto& family : families) {
            Slopes s = slopes(bundle, family);
            Rational deg = restrict_to_curve(bundle, family).total_degree();
            Rational m_i = deg - s.mu_min;
            for (long member = 0; member < family.member_count; ++member) {
                PECurveClass ci;
                ci.basis = CurveBasis::toric_generator;
                ci.toric_index = index;
                ci.section_coeff = 1;
                ci.l_c = m_i;
                ci.family_label = family.label;
                cone.curve_generators.push_back(
                    ConeGenerator{ci, "C_" + std::to_string(index) + " over " + family.label +
                                          ", m_i = " + fraction_string(m_i)});
                ++index;
            }
        }
        return cone;
    }
    case BaseKind::abstract_base:
        throw error("NE generators are available for curve, projective_space and toric bases");
    }
    throw error("unreachable");
}

ConeDescription nef_generators_curve_base(const BaseVariety& base, const BundleDescriptor& bundle) {
    if (base.kind != BaseKind::curve)
        throw error("nef generator description requires a curve base");
    auto families = test_curve_families(base, bundle);
    Rational mu_min = slopes(bundle, families.at(0)).mu_min;
    ConeDescription cone;
    cone.side = "divisors";
    cone.divisor_generators.push_back(constant_pe_class(Rational(1), {-mu_min}));
    cone.divisor_generators.push_back(constant_pe_class(Rational(0), {Rational(1)}));
    return cone;
}

DualityReport duality_check(const BaseVariety& base, const BundleDescriptor& bundle,
                            const IntersectionRing& ring) {
    if (base.kind != BaseKind::curve)
        throw error("duality check is defined over curve bases");
    if (ring.rank != bundle.rank)
        throw error("ring rank " + std::to_string(ring.rank) + " does not match bundle rank " +
                    std::to_string(bundle.rank));
    ConeDescription nef = nef_generators_curve_base(base, bundle);
    ConeDescription ne = ne_generators(base, bundle);
    DualityReport report;
    report.all_nonnegative = true;
    report.diagonal_incidence = true;
    for (size_t i = 0; i < nef.divisor_generators.size(); ++i) {
        std::vector<Rational> row;
        for (size_t j = 0; j < ne.curve_generators.size(); ++j) {
            Rational value = pair_divisor_curve(nef.divisor_generators[i],
                                                ne.curve_generators[j].cls, ring);
            if (value < 0)
                report.all_nonnegative = false;
            bool expect_zero = i != j; // F pairs with xi - mu_min f, f with the section class
            if (expect_zero ? value != 0 : value <= 0)
                report.diagonal_incidence = false;
            row.push_back(std::move(value));
        }
        report.matrix.push_back(std::move(row));
    }
    return report;
}

} // namespace pepos
