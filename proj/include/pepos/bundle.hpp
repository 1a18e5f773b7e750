#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pepos/base.hpp"
#include "pepos/hn.hpp"
#include "pepos/rational.hpp"

namespace pepos {

enum class BundleKind { split_pn, tangent_pn, hn_curve, semistable_flat, equivariant_toric, chern_fixture };

/// Three-valued verdict for strict nefness: mu_min = 0 on a genus >= 2
/// curve does not decide it (Mumford's examples), so the engine refuses
/// to guess.
enum class Tri { yes, no, unknown };

std::string to_string(BundleKind kind);
std::string to_string(Tri t);

struct Assertion {
    bool value = false;
    std::string provenance;
};

/// User-supplied positivity flags with provenance, consumed only when
/// certificates are enabled.
struct PositivityAssertions {
    std::optional<Assertion> is_nef;
    std::optional<Assertion> is_ample;
    std::optional<Assertion> is_strictly_nef;
    bool empty() const { return !is_nef && !is_ample && !is_strictly_nef; }
};

/// Rank-2/3 Chern data of a fixture bundle on P^n: c1, c2 as multiples of
/// H, H^2.
struct ChernData {
    int rank = 2;
    Int c1;
    Int c2;
    int base_dim = 2;

    /// c2(End) = 2 r c2 - (r-1) c1^2.
    Int c2_end() const { return 2 * rank * c2 - (rank - 1) * c1 * c1; }
};

bool c2_end_flat(const ChernData& chern);

struct BundleDescriptor {
    BundleKind kind = BundleKind::split_pn;
    int rank = 0;

    std::vector<Int> twists;  // split_pn
    int tangent_n = 0;        // tangent_pn: T_{P^n}(tangent_twist)
    Int tangent_twist;
    HNType hn;                // hn_curve
    std::vector<Rational> det_coeffs; // semistable_flat: det(E) in base coordinates
    bool c2_end_zero = false;         // semistable_flat: verified or asserted
    std::map<std::string, std::vector<Int>> restriction_table; // equivariant_toric, by wall label
    std::optional<ChernData> chern;   // chern_fixture

    PositivityAssertions assertions;
};

BundleDescriptor make_split(std::vector<Int> twists);
BundleDescriptor make_tangent(int n);
BundleDescriptor make_hn_curve(HNType hn);
BundleDescriptor make_semistable_flat(int rank, std::vector<Rational> det_coeffs, bool c2_end_zero);
BundleDescriptor make_equivariant(int rank, std::map<std::string, std::vector<Int>> table);
BundleDescriptor make_chern_fixture(ChernData chern);

/// HN type of the bundle pulled back to the (normalized) curves of the
/// family. chern_fixture bundles carry no restriction theory and are
/// rejected here.
HNType restrict_to_curve(const BundleDescriptor& bundle, const CurveFamily& family);

struct Slopes {
    Rational mu_min, mu, mu_max;
};

Slopes slopes(const BundleDescriptor& bundle, const CurveFamily& family);

/// deg(E|_C) = det(E) . C for the family, via restriction where the kind
/// supports it and via the stored determinant class otherwise.
Rational det_degree_on(const BundleDescriptor& bundle, const CurveFamily& family);

/// Twist by O(k) (split, tangent, chern rank <= 3) or by a degree-k line
/// bundle on the base curve (hn_curve).
BundleDescriptor twist(const BundleDescriptor& bundle, const Int& k);

/// det(E) in base divisor coordinates. For equivariant toric bundles the
/// class is recovered exactly from the per-wall degrees.
std::vector<Rational> det_class(const BundleDescriptor& bundle, const BaseVariety& base);

struct PositivitySummary {
    bool nef = false;
    bool ample = false;
    Tri strictly_nef = Tri::unknown;
    std::vector<std::string> notes;
};

/// Slope-criterion positivity of the bundle itself. use_assertions=false
/// ignores the descriptor's certificates (audit mode).
PositivitySummary positivity(const BundleDescriptor& bundle, const BaseVariety& base,
                             bool use_assertions = true);

/// Semistable with c2(End)=0: strictly nef when det(E) is strictly nef
/// (one direction only). `det_strictly_nef_certificate` supplies the
/// verdict on bases where it cannot be computed.
Tri strictly_nef_from_semistable(const BundleDescriptor& bundle, const BaseVariety& base,
                                 std::optional<bool> det_strictly_nef_certificate = std::nullopt);

/// Strict nefness of det(E) on the base, computed from families where
/// possible. unknown on abstract bases without enough data.
Tri det_strictly_nef(const BundleDescriptor& bundle, const BaseVariety& base);

bool compatible(const BundleDescriptor& bundle, const BaseVariety& base);

} // namespace pepos
