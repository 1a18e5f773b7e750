#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pepos/hn.hpp"
#include "pepos/rational.hpp"
#include "pepos/toricfan.hpp"

namespace pepos {

struct BundleDescriptor;

enum class BaseKind { curve, projective_space, toric, abstract_base };

/// Whether positivity on the family certifies positivity on all
/// irreducible curves of the base.
enum class Exactness { cone_generating, sufficient_only };

std::string to_string(BaseKind kind);
std::string to_string(Exactness e);

/// A finite family of numerically equivalent test curves together with
/// the data needed to restrict bundles to its members.
struct CurveFamily {
    std::string label;
    std::vector<Rational> degree_data; // L.C for every basis divisor coordinate
    Rational canonical_degree;         // K_X . C
    Exactness exactness = Exactness::sufficient_only;
    long member_count = 1;

    // Restriction context.
    Rational line_degree = Rational(1);      // degree against O(1) (curve / P^n bases)
    std::optional<std::string> wall_label;   // toric bases: key into restriction tables
    std::optional<HNType> declared_restriction; // abstract bases: user-supplied HN data

    /// gamma . C for a base divisor class given by coefficients.
    Rational pair_with(const std::vector<Rational>& coefficients) const;
};

struct BaseVariety {
    BaseKind kind = BaseKind::abstract_base;
    int dim = 0;
    int genus = 0;      // curve kind only
    int picard_rank = 0;
    bool serrano_known = false;

    std::optional<toric::Fan> fan;      // toric kind only
    std::vector<toric::Wall> fan_walls; // cached wall enumeration, toric kind only

    // abstract kind only
    std::vector<CurveFamily> abstract_families;
    std::optional<std::vector<Rational>> abstract_canonical;

    /// Coefficient length of divisor classes on this base
    /// (toric: one per ray; reduction deferred to pairing).
    size_t coefficient_length() const;
};

BaseVariety make_curve(int genus);
BaseVariety make_projective_space(int n);
BaseVariety make_toric(toric::Fan fan);
BaseVariety make_abstract(int dim, int picard_rank, bool serrano_known,
                          std::vector<CurveFamily> families,
                          std::optional<std::vector<Rational>> canonical_coeffs);

/// K_X in basis coordinates: [2g-2] on a curve, [-(n+1)] on P^n, all -1
/// over the rays of a toric base; abstract bases must supply it.
std::vector<Rational> canonical_coefficients(const BaseVariety& base);

/// As above, but empty (instead of throwing) when an abstract base has no
/// canonical class data.
std::vector<Rational> canonical_coefficients_or_empty(const BaseVariety& base);

/// The finite test family for a base/bundle pair, with its exactness tag:
/// the base curve itself, the lines of P^n, the walls of a toric fan, or
/// the user-declared families of an abstract base.
std::vector<CurveFamily> test_curve_families(const BaseVariety& base, const BundleDescriptor& bundle);

/// Number of torus-invariant curves on P^n, without fan machinery.
long invariant_curve_count_pn(int n);

} // namespace pepos
