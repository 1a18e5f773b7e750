#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pepos/base.hpp"
#include "pepos/bundle.hpp"
#include "pepos/rational.hpp"

namespace pepos {

/// Divisor class y0 xi + pi^* gamma on P(E), both parts affine in the
/// parameter t. y0 and gamma are stored separately; curve classes live in
/// PECurveClass.
struct PEDivisorClass {
    LinPoly xi;
    std::vector<LinPoly> base_part;

    bool t_free() const;
    /// Evaluates the t-polynomials, yielding a constant class.
    PEDivisorClass at(const Rational& t) const;
    std::string str() const;
};

PEDivisorClass constant_pe_class(Rational y0, std::vector<Rational> gamma);

enum class CurveBasis { fiber_line, section_type, toric_generator };

/// 1-cycle class in the generator bases: on a curve base the span of
/// xi^{r-2}F and xi^{r-1} - l_c xi^{r-2}F; on a toric base the classes
/// C_0, C_1, ..., C_m of the invariant-curve construction.
struct PECurveClass {
    CurveBasis basis = CurveBasis::fiber_line;
    Rational fiber_coeff;   // coefficient of xi^{r-2}F
    Rational section_coeff; // coefficient of xi^{r-1} - l_c xi^{r-2}F
    Rational l_c;           // deg - mu_min data of the generating family
    int toric_index = -1;   // 0 = C_0, i >= 1 = C_i
    std::string family_label;
};

/// Chow ring data of P(E) for curve and P^n (split/tangent) bases:
/// B^{n+1} = 0 and the Grothendieck relation
/// xi^r = c_1 B xi^{r-1} - c_2 B^2 xi^{r-2} + ... with normalization
/// xi^{r-1} B^n = 1.
struct IntersectionRing {
    BaseKind base_kind = BaseKind::curve;
    int rank = 0;
    int base_dim = 0;
    std::vector<Rational> chern; // c_1 .. c_min(rank, base_dim)

    int top_degree() const { return rank - 1 + base_dim; }
};

IntersectionRing make_curve_ring(int rank, const Rational& deg_e);
IntersectionRing make_split_pn_ring(int n, const std::vector<Int>& twists);
IntersectionRing make_tangent_pn_ring(int n);
/// Ring for a base/bundle pair where supported (curve base, split or
/// tangent bundles on P^n).
std::optional<IntersectionRing> make_ring(const BaseVariety& base, const BundleDescriptor& bundle);

/// K_{P(E)} = -r xi + pi^*(K_X + det E).
PEDivisorClass canonical_class(const BaseVariety& base, const BundleDescriptor& bundle);

/// K_{P(E)} + t D for D = m xi + pi^* N:
/// (t m - r) xi + pi^*(K_X + det E + t N), affine in t.
PEDivisorClass adjoint_class(const BaseVariety& base, const BundleDescriptor& bundle,
                             const Int& m, const std::vector<Rational>& n_class);

/// Product of top_degree() t-free divisor classes, reduced to the
/// normalized coefficient. Throws on wrong arity or t-dependence.
Rational top_intersection(const IntersectionRing& ring, const std::vector<PEDivisorClass>& classes);

/// Exact divisor-curve pairing through the ring (fiber_line and
/// section_type generators).
Rational pair_divisor_curve(const PEDivisorClass& divisor, const PECurveClass& curve,
                            const IntersectionRing& ring);

} // namespace pepos
