#include "pepos/base.hpp"

#include "pepos/bundle.hpp"

namespace pepos {

std::string to_string(BaseKind kind) {
    switch (kind) {
    case BaseKind::curve: return "curve";
    case BaseKind::projective_space: return "projective_space";
    case BaseKind::toric: return "toric";
    case BaseKind::abstract_base: return "abstract";
    }
    return "?";
}

std::string to_string(Exactness e) {
    return e == Exactness::cone_generating ? "cone_generating" : "sufficient_only";
}

Rational CurveFamily::pair_with(const std::vector<Rational>& coefficients) const {
    if (coefficients.size() != degree_data.size())
        throw error("divisor class has " + std::to_string(coefficients.size()) +
                    " coefficients, family '" + label + "' expects " +
                    std::to_string(degree_data.size()));
    Rational value(0);
    for (size_t i = 0; i < coefficients.size(); ++i)
        value += coefficients[i] * degree_data[i];
    return value;
}

size_t BaseVariety::coefficient_length() const {
    switch (kind) {
    case BaseKind::curve:
    case BaseKind::projective_space:
        return 1;
    case BaseKind::toric:
        return fan->rays.size();
    case BaseKind::abstract_base:
        return static_cast<size_t>(picard_rank);
    }
    return 0;
}

BaseVariety make_curve(int genus) {
    if (genus < 0)
        throw error("curve genus must be non-negative");
    BaseVariety base;
    base.kind = BaseKind::curve;
    base.dim = 1;
    base.genus = genus;
    base.picard_rank = 1;
    base.serrano_known = true; // dimension 1: known for integral strictly nef divisors
    return base;
}

BaseVariety make_projective_space(int n) {
    if (n < 1)
        throw error("projective space dimension must be >= 1");
    BaseVariety base;
    base.kind = BaseKind::projective_space;
    base.dim = n;
    base.picard_rank = 1;
    base.serrano_known = false; // user-asserted for dim >= 2
    return base;
}

BaseVariety make_toric(toric::Fan fan) {
    toric::validate_fan(fan);
    BaseVariety base;
    base.kind = BaseKind::toric;
    base.dim = fan.lattice_dim;
    base.picard_rank = static_cast<int>(fan.rays.size()) - fan.lattice_dim;
    base.serrano_known = false; // user-asserted
    base.fan_walls = toric::walls(fan);
    base.fan = std::move(fan);
    if (base.dim < 1)
        throw error("base dimension must be >= 1");
    return base;
}

BaseVariety make_abstract(int dim, int picard_rank, bool serrano_known,
                          std::vector<CurveFamily> families,
                          std::optional<std::vector<Rational>> canonical_coeffs) {
    if (dim < 1)
        throw error("base dimension must be >= 1");
    if (picard_rank < 1)
        throw error("picard rank must be >= 1");
    for (const auto& family : families) {
        if (family.degree_data.size() != static_cast<size_t>(picard_rank))
            throw error("abstract family '" + family.label + "': degree data length " +
                        std::to_string(family.degree_data.size()) + " != picard rank " +
                        std::to_string(picard_rank));
    }
    if (canonical_coeffs && canonical_coeffs->size() != static_cast<size_t>(picard_rank))
        throw error("abstract base: canonical class length != picard rank");
    BaseVariety base;
    base.kind = BaseKind::abstract_base;
    base.dim = dim;
    base.picard_rank = picard_rank;
    base.serrano_known = serrano_known;
    base.abstract_families = std::move(families);
    base.abstract_canonical = std::move(canonical_coeffs);
    return base;
}

std::vector<Rational> canonical_coefficients(const BaseVariety& base) {
    switch (base.kind) {
    case BaseKind::curve:
        return {Rational(2 * base.genus - 2)};
    case BaseKind::projective_space:
        return {Rational(-(base.dim + 1))};
    case BaseKind::toric:
        return std::vector<Rational>(base.fan->rays.size(), Rational(-1));
    case BaseKind::abstract_base:
        if (!base.abstract_canonical)
            throw error("abstract base has no canonical class coefficients");
        return *base.abstract_canonical;
    }
    throw error("unreachable");
}

std::vector<Rational> canonical_coefficients_or_empty(const BaseVariety& base) {
    if (base.kind == BaseKind::abstract_base && !base.abstract_canonical)
        return {};
    return canonical_coefficients(base);
}

long invariant_curve_count_pn(int n) {
    return static_cast<long>(n) * (n + 1) / 2;
}

namespace {

CurveFamily curve_base_family(const BaseVariety& base) {
    CurveFamily family;
    family.label = "base_curve";
    family.degree_data = {Rational(1)};
    family.canonical_degree = Rational(2 * base.genus - 2);
    family.exactness = Exactness::cone_generating;
    family.line_degree = Rational(1);
    return family;
}

CurveFamily pn_lines_family(const BaseVariety& base) {
    CurveFamily family;
    family.label = "lines";
    family.degree_data = {Rational(1)};
    family.canonical_degree = Rational(-(base.dim + 1));
    family.exactness = Exactness::cone_generating;
    family.member_count = invariant_curve_count_pn(base.dim);
    family.line_degree = Rational(1);
    return family;
}

std::vector<CurveFamily> toric_wall_families(const BaseVariety& base) {
    std::vector<CurveFamily> families;
    const auto& fan = *base.fan;
    for (const auto& wall : base.fan_walls) {
        CurveFamily family;
        family.label = wall.label;
        family.wall_label = wall.label;
        family.exactness = Exactness::cone_generating;
        family.degree_data.reserve(fan.rays.size());
        for (size_t rho = 0; rho < fan.rays.size(); ++rho) {
            toric::ToricDivisor d{std::vector<Rational>(fan.rays.size(), Rational(0))};
            d.coefficients[rho] = 1;
            family.degree_data.push_back(toric::intersect(fan, d, wall));
        }
        Rational k(0);
        for (const Rational& deg : family.degree_data)
            k -= deg;
        family.canonical_degree = k;
        families.push_back(std::move(family));
    }
    return families;
}

} // namespace

std::vector<CurveFamily> test_curve_families(const BaseVariety& base, const BundleDescriptor& bundle) {
    if (!compatible(bundle, base))
        throw error("bundle kind " + to_string(bundle.kind) + " is not supported on a " +
                    to_string(base.kind) + " base");
    switch (base.kind) {
    case BaseKind::curve:
        return {curve_base_family(base)};
    case BaseKind::projective_space:
        return {pn_lines_family(base)};
    case BaseKind::toric: {
        auto families = toric_wall_families(base);
        if (bundle.kind == BundleKind::equivariant_toric) {
            for (const auto& family : families)
                if (!bundle.restriction_table.count(*family.wall_label))
                    throw error("equivariant bundle restriction table is missing wall '" +
                                *family.wall_label + "'");
        }
        return families;
    }
    case BaseKind::abstract_base:
        return base.abstract_families;
    }
    throw error("unreachable");
}

} // namespace pepos
