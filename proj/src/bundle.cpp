#include "pepos/bundle.hpp"

#include <algorithm>

namespace pepos {

std::string to_string(BundleKind kind) {
    switch (kind) {
    case BundleKind::split_pn: return "split_pn";
    case BundleKind::tangent_pn: return "tangent_pn";
    case BundleKind::hn_curve: return "hn_curve";
    case BundleKind::semistable_flat: return "semistable_flat";
    case BundleKind::equivariant_toric: return "equivariant_toric";
    case BundleKind::chern_fixture: return "chern_fixture";
    }
    return "?";
}

std::string to_string(Tri t) {
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
    }
    return "?";
}

bool c2_end_flat(const ChernData& chern) {
    return chern.c2_end() == 0;
}

BundleDescriptor make_split(std::vector<Int> twists) {
    if (twists.size() < 2)
        throw error("split bundle needs rank >= 2");
    BundleDescriptor bundle;
    bundle.kind = BundleKind::split_pn;
    bundle.rank = static_cast<int>(twists.size());
    bundle.twists = std::move(twists);
    return bundle;
}

BundleDescriptor make_tangent(int n) {
    if (n < 2)
        throw error("tangent bundle descriptor needs n >= 2");
    BundleDescriptor bundle;
    bundle.kind = BundleKind::tangent_pn;
    bundle.rank = n;
    bundle.tangent_n = n;
    return bundle;
}

BundleDescriptor make_hn_curve(HNType hn) {
    hn.validate();
    BundleDescriptor bundle;
    bundle.kind = BundleKind::hn_curve;
    bundle.rank = hn.total_rank();
    if (bundle.rank < 2)
        throw error("bundle rank must be >= 2");
    bundle.hn = std::move(hn);
    return bundle;
}

BundleDescriptor make_semistable_flat(int rank, std::vector<Rational> det_coeffs, bool c2_end_zero) {
    if (rank < 2)
        throw error("bundle rank must be >= 2");
    BundleDescriptor bundle;
    bundle.kind = BundleKind::semistable_flat;
    bundle.rank = rank;
    bundle.det_coeffs = std::move(det_coeffs);
    bundle.c2_end_zero = c2_end_zero;
    return bundle;
}

BundleDescriptor make_equivariant(int rank, std::map<std::string, std::vector<Int>> table) {
    if (rank < 2)
        throw error("bundle rank must be >= 2");
    for (const auto& [label, splitting] : table)
        if (static_cast<int>(splitting.size()) != rank)
            throw error("equivariant restriction on wall '" + label + "' has " +
                        std::to_string(splitting.size()) + " summands, rank is " +
                        std::to_string(rank));
    BundleDescriptor bundle;
    bundle.kind = BundleKind::equivariant_toric;
    bundle.rank = rank;
    bundle.restriction_table = std::move(table);
    return bundle;
}

BundleDescriptor make_chern_fixture(ChernData chern) {
    if (chern.rank < 2)
        throw error("bundle rank must be >= 2");
    BundleDescriptor bundle;
    bundle.kind = BundleKind::chern_fixture;
    bundle.rank = chern.rank;
    bundle.det_coeffs = {Rational(chern.c1)};
    bundle.chern = std::move(chern);
    return bundle;
}

bool compatible(const BundleDescriptor& bundle, const BaseVariety& base) {
    switch (bundle.kind) {
    case BundleKind::split_pn:
    case BundleKind::tangent_pn:
        return base.kind == BaseKind::projective_space &&
               (bundle.kind != BundleKind::tangent_pn || bundle.tangent_n == base.dim);
    case BundleKind::hn_curve:
        return base.kind == BaseKind::curve;
    case BundleKind::semistable_flat:
        return true;
    case BundleKind::equivariant_toric:
        return base.kind == BaseKind::toric;
    case BundleKind::chern_fixture:
        return base.kind == BaseKind::projective_space && bundle.chern &&
               bundle.chern->base_dim == base.dim;
    }
    return false;
}

HNType restrict_to_curve(const BundleDescriptor& bundle, const CurveFamily& family) {
    switch (bundle.kind) {
    case BundleKind::split_pn: {
        // O(a) pulls back to O(a d) on the normalization of a degree-d curve.
        std::vector<Rational> degrees;
        degrees.reserve(bundle.twists.size());
        for (const Int& a : bundle.twists)
            degrees.push_back(Rational(a) * family.line_degree);
        return hn_of_slopes(degrees);
    }
    case BundleKind::tangent_pn: {
        if (family.line_degree != 1)
            throw error("tangent bundle restriction is only available on invariant lines");
        std::vector<Rational> degrees(static_cast<size_t>(bundle.tangent_n),
                                      Rational(1) + Rational(bundle.tangent_twist));
        degrees[0] = Rational(2) + Rational(bundle.tangent_twist);
        return hn_of_slopes(degrees);
    }
    case BundleKind::hn_curve:
        if (family.declared_restriction)
            return *family.declared_restriction;
        return bundle.hn;
    case BundleKind::semistable_flat: {
        // c2(End) = 0 forces semistable pullbacks; declared data may only
        // refine the non-flat case.
        if (!bundle.c2_end_zero && family.declared_restriction)
            return *family.declared_restriction;
        Rational deg = family.pair_with(bundle.det_coeffs);
        return HNType{{HNBlock{bundle.rank, deg / Rational(bundle.rank)}}};
    }
    case BundleKind::equivariant_toric: {
        if (!family.wall_label)
            throw error("equivariant bundle restricted to a non-wall family");
        auto it = bundle.restriction_table.find(*family.wall_label);
        if (it == bundle.restriction_table.end())
            throw error("no restriction data for wall '" + *family.wall_label + "'");
        return hn_of_split(it->second);
    }
    case BundleKind::chern_fixture:
        throw error("chern_fixture bundles do not support restriction; use a theorem route");
    }
    throw error("unreachable");
}

Slopes slopes(const BundleDescriptor& bundle, const CurveFamily& family) {
    HNType hn = restrict_to_curve(bundle, family);
    return Slopes{hn.mu_min(), hn.mu(), hn.mu_max()};
}

Rational det_degree_on(const BundleDescriptor& bundle, const CurveFamily& family) {
    if (bundle.kind == BundleKind::chern_fixture || bundle.kind == BundleKind::semistable_flat)
        return family.pair_with(bundle.det_coeffs);
    return restrict_to_curve(bundle, family).total_degree();
}

BundleDescriptor twist(const BundleDescriptor& bundle, const Int& k) {
    BundleDescriptor out = bundle;
    switch (bundle.kind) {
    case BundleKind::split_pn:
        for (Int& a : out.twists)
            a += k;
        return out;
    case BundleKind::tangent_pn:
        out.tangent_twist += k;
        return out;
    case BundleKind::hn_curve:
        out.hn = bundle.hn.shifted(Rational(k));
        return out;
    case BundleKind::chern_fixture: {
        if (bundle.rank > 3)
            throw error("chern twist formula implemented for rank <= 3 only; "
                        "supply twisted data directly");
        ChernData c = *bundle.chern;
        // Whitney: c1 += r k, c2 += (r-1) k c1 + C(r,2) k^2.
        c.c2 = c.c2 + Int(c.rank - 1) * k * c.c1 + Int(c.rank * (c.rank - 1) / 2) * k * k;
        c.c1 = c.c1 + Int(c.rank) * k;
        out.chern = c;
        out.det_coeffs = {Rational(c.c1)};
        return out;
    }
    case BundleKind::semistable_flat:
    case BundleKind::equivariant_toric:
        throw error("twist is not defined for " + to_string(bundle.kind) +
                    " descriptors without per-wall twist data");
    }
    throw error("unreachable");
}

std::vector<Rational> det_class(const BundleDescriptor& bundle, const BaseVariety& base) {
    switch (bundle.kind) {
    case BundleKind::split_pn: {
        Rational sum(0);
        for (const Int& a : bundle.twists)
            sum += Rational(a);
        return {sum};
    }
    case BundleKind::tangent_pn:
        return {Rational(bundle.tangent_n + 1) + Rational(bundle.tangent_n) * Rational(bundle.tangent_twist)};
    case BundleKind::hn_curve:
        return {bundle.hn.total_degree()};
    case BundleKind::semistable_flat:
    case BundleKind::chern_fixture:
        if (bundle.det_coeffs.size() != base.coefficient_length())
            throw error("determinant class length mismatch");
        return bundle.det_coeffs;
    case BundleKind::equivariant_toric: {
        // Recover a ray-divisor representative from the per-wall degrees.
        const auto& fan = *base.fan;
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (const auto& wall : base.fan_walls) {
            std::vector<Rational> row(fan.rays.size(), Rational(0));
            for (size_t rho = 0; rho < fan.rays.size(); ++rho) {
                toric::ToricDivisor d{std::vector<Rational>(fan.rays.size(), Rational(0))};
                d.coefficients[rho] = 1;
                row[rho] = toric::intersect(fan, d, wall);
            }
            a.push_back(std::move(row));
            auto it = bundle.restriction_table.find(wall.label);
            if (it == bundle.restriction_table.end())
                throw error("no restriction data for wall '" + wall.label + "'");
            Int deg(0);
            for (const Int& x : it->second)
                deg += x;
            b.emplace_back(deg);
        }
        auto sol = toric::solve_linear(a, b);
        if (!sol)
            throw error("equivariant restriction degrees are inconsistent: no divisor class "
                        "has the prescribed wall pairings");
        return *sol;
    }
    }
    throw error("unreachable");
}

namespace {

std::optional<bool> asserted(const std::optional<Assertion>& a, bool use_assertions,
                             std::vector<std::string>& notes, const char* subject) {
    if (!use_assertions || !a)
        return std::nullopt;
    notes.push_back(std::string("assertion ") + subject + " = " + (a->value ? "true" : "false") +
                    " (" + a->provenance + ")");
    return a->value;
}

/// Strict-nefness verdict from a slope boundary on a curve of the given
/// genus: mu_min = 0 decides "no" only when genus <= 1.
Tri strictly_nef_on_curve(const Rational& mu_min, int genus) {
    if (mu_min > 0) return Tri::yes;
    if (mu_min < 0) return Tri::no;
    return genus <= 1 ? Tri::no : Tri::unknown;
}

} // namespace

PositivitySummary positivity(const BundleDescriptor& bundle, const BaseVariety& base,
                             bool use_assertions) {
    PositivitySummary out;
    switch (bundle.kind) {
    case BundleKind::split_pn: {
        Int min_twist = *std::min_element(bundle.twists.begin(), bundle.twists.end());
        out.nef = min_twist >= 0;
        out.ample = min_twist >= 1;
        out.strictly_nef = out.ample ? Tri::yes : Tri::no;
        break;
    }
    case BundleKind::tangent_pn: {
        Rational min_slope = Rational(1) + Rational(bundle.tangent_twist);
        out.nef = min_slope >= 0;
        out.ample = min_slope > 0;
        out.strictly_nef = out.ample ? Tri::yes : (min_slope < 0 ? Tri::no : Tri::unknown);
        break;
    }
    case BundleKind::hn_curve: {
        Rational mu_min = bundle.hn.mu_min();
        out.nef = mu_min >= 0;
        out.ample = mu_min > 0;
        out.strictly_nef = strictly_nef_on_curve(mu_min, base.genus);
        break;
    }
    case BundleKind::semistable_flat: {
        if (base.kind == BaseKind::curve) {
            CurveFamily family;
            family.label = "base_curve";
            family.degree_data = {Rational(1)};
            Rational mu_min = slopes(bundle, family).mu_min;
            out.nef = mu_min >= 0;
            out.ample = mu_min > 0;
            out.strictly_nef = strictly_nef_on_curve(mu_min, base.genus);
            break;
        }
        auto families = test_curve_families(base, bundle);
        if (families.empty()) {
            out.nef = false;
            out.ample = false;
            out.strictly_nef = Tri::unknown;
            out.notes.push_back("no curve families available; positivity undetermined");
        } else {
            bool exact = true;
            bool all_nonneg = true, all_pos = true, any_neg = false;
            for (const auto& family : families) {
                if (family.exactness != Exactness::cone_generating) exact = false;
                Rational mu_min = slopes(bundle, family).mu_min;
                if (mu_min < 0) { all_nonneg = false; any_neg = true; }
                if (mu_min <= 0) all_pos = false;
            }
            out.nef = all_nonneg && exact;
            out.ample = all_pos && exact;
            out.strictly_nef = bundle.c2_end_zero ? strictly_nef_from_semistable(bundle, base)
                                                  : Tri::unknown;
            if (any_neg) out.strictly_nef = Tri::no;
            if (!exact)
                out.notes.push_back("families are sufficient_only; verdicts not exact");
        }
        break;
    }
    case BundleKind::equivariant_toric: {
        auto families = test_curve_families(base, bundle);
        bool all_nonneg = true, all_pos = true;
        for (const auto& family : families) {
            Rational mu_min = slopes(bundle, family).mu_min;
            if (mu_min < 0) all_nonneg = false;
            if (mu_min <= 0) all_pos = false;
        }
        out.nef = all_nonneg;
        out.ample = all_pos;
        if (!all_nonneg) {
            out.strictly_nef = Tri::no;
            out.notes.push_back("a wall has mu_min < 0: the section over that invariant "
                                "curve meets xi negatively");
        } else if (all_pos) {
            auto nef_assert = asserted(bundle.assertions.is_nef, use_assertions, out.notes, "is_nef");
            out.strictly_nef = (nef_assert && *nef_assert) ? Tri::yes : Tri::unknown;
        } else {
            out.strictly_nef = Tri::unknown;
        }
        break;
    }
    case BundleKind::chern_fixture: {
        std::vector<std::string> notes;
        auto nef = asserted(bundle.assertions.is_nef, use_assertions, notes, "is_nef");
        auto ample = asserted(bundle.assertions.is_ample, use_assertions, notes, "is_ample");
        auto sn = asserted(bundle.assertions.is_strictly_nef, use_assertions, notes, "is_strictly_nef");
        out.nef = nef.value_or(ample.value_or(false));
        out.ample = ample.value_or(false);
        if (sn)
            out.strictly_nef = *sn ? Tri::yes : Tri::no;
        else if (out.ample)
            out.strictly_nef = Tri::yes;
        else
            out.strictly_nef = Tri::unknown;
        out.notes = std::move(notes);
        break;
    }
    }
    if (use_assertions && bundle.kind != BundleKind::chern_fixture) {
        // Explicit strictly-nef certificates override boundary verdicts.
        if (auto sn = asserted(bundle.assertions.is_strictly_nef, true, out.notes, "is_strictly_nef"))
            out.strictly_nef = *sn ? Tri::yes : Tri::no;
    }
    return out;
}

Tri det_strictly_nef(const BundleDescriptor& bundle, const BaseVariety& base) {
    switch (base.kind) {
    case BaseKind::curve:
    case BaseKind::projective_space: {
        Rational degree = det_class(bundle, base)[0];
        // Degree classes: strictly nef iff positive (P^n: iff ample).
        return degree > 0 ? Tri::yes : Tri::no;
    }
    case BaseKind::toric: {
        // Positive on all invariant curves = ample by the toric Kleiman
        // criterion, hence strictly nef; a non-positive wall value is a
        // witness curve.
        auto families = test_curve_families(base, bundle);
        for (const auto& family : families)
            if (det_degree_on(bundle, family) <= 0)
                return Tri::no;
        return Tri::yes;
    }
    case BaseKind::abstract_base: {
        for (const auto& family : base.abstract_families)
            if (det_degree_on(bundle, family) <= 0)
                return Tri::no; // a declared curve pairs non-positively
        return Tri::unknown;
    }
    }
    return Tri::unknown;
}

Tri strictly_nef_from_semistable(const BundleDescriptor& bundle, const BaseVariety& base,
                                 std::optional<bool> det_strictly_nef_certificate) {
    if (bundle.kind != BundleKind::semistable_flat)
        throw error("strictly_nef_from_semistable requires a semistable_flat descriptor");
    if (!bundle.c2_end_zero)
        throw error("semistable_flat descriptor without c2(End)=0 flag");
    Tri det_sn = det_strictly_nef(bundle, base);
    if (det_sn == Tri::unknown && det_strictly_nef_certificate)
        det_sn = *det_strictly_nef_certificate ? Tri::yes : Tri::unknown;
    if (base.kind == BaseKind::abstract_base && base.abstract_families.empty() &&
        !det_strictly_nef_certificate)
        throw error("missing det strict-nefness certificate on abstract base");
    return det_sn == Tri::yes ? Tri::yes : Tri::unknown; // theorem is one-directional
}

} // namespace pepos
