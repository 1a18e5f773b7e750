#include "pepos/pbundle.hpp"

#include <map>

namespace pepos {

bool PEDivisorClass::t_free() const {
    if (!xi.is_constant())
        return false;
    for (const auto& c : base_part)
        if (!c.is_constant())
            return false;
    return true;
}

PEDivisorClass PEDivisorClass::at(const Rational& t) const {
    PEDivisorClass out;
    out.xi = LinPoly::of(xi.at(t));
    out.base_part.reserve(base_part.size());
    for (const auto& c : base_part)
        out.base_part.push_back(LinPoly::of(c.at(t)));
    return out;
}

std::string PEDivisorClass::str() const {
    std::string s = "(" + xi.str() + ") xi + pi^*[";
    for (size_t i = 0; i < base_part.size(); ++i) {
        if (i) s += ", ";
        s += base_part[i].str();
    }
    return s + "]";
}

PEDivisorClass constant_pe_class(Rational y0, std::vector<Rational> gamma) {
    PEDivisorClass out;
    out.xi = LinPoly::of(std::move(y0));
    out.base_part.reserve(gamma.size());
    for (auto& g : gamma)
        out.base_part.push_back(LinPoly::of(std::move(g)));
    return out;
}

IntersectionRing make_curve_ring(int rank, const Rational& deg_e) {
    if (rank < 2)
        throw error("intersection ring needs rank >= 2");
    IntersectionRing ring;
    ring.base_kind = BaseKind::curve;
    ring.rank = rank;
    ring.base_dim = 1;
    ring.chern = {deg_e}; // c_i vanishes on a curve for i >= 2
    return ring;
}

IntersectionRing make_split_pn_ring(int n, const std::vector<Int>& twists) {
    const int r = static_cast<int>(twists.size());
    if (r < 2)
        throw error("intersection ring needs rank >= 2");
    IntersectionRing ring;
    ring.base_kind = BaseKind::projective_space;
    ring.rank = r;
    ring.base_dim = n;
    // Elementary symmetric functions of the twists, degree 1..min(r, n).
    const int top = std::min(r, n);
    std::vector<Rational> e(static_cast<size_t>(top) + 1, Rational(0));
    e[0] = 1;
    for (const Int& a : twists)
        for (int k = top; k >= 1; --k)
            e[static_cast<size_t>(k)] += e[static_cast<size_t>(k - 1)] * Rational(a);
    ring.chern.assign(e.begin() + 1, e.end());
    return ring;
}

IntersectionRing make_tangent_pn_ring(int n) {
    if (n < 2)
        throw error("tangent ring needs n >= 2");
    IntersectionRing ring;
    ring.base_kind = BaseKind::projective_space;
    ring.rank = n;
    ring.base_dim = n;
    // c(T_{P^n}) = (1+H)^{n+1} truncated: c_k = C(n+1, k).
    Rational binom(1);
    for (int k = 1; k <= n; ++k) {
        binom = binom * Rational(n + 2 - k) / Rational(k);
        ring.chern.push_back(binom);
    }
    return ring;
}

std::optional<IntersectionRing> make_ring(const BaseVariety& base, const BundleDescriptor& bundle) {
    if (base.kind == BaseKind::curve) {
        if (bundle.kind == BundleKind::hn_curve)
            return make_curve_ring(bundle.rank, bundle.hn.total_degree());
        if (bundle.kind == BundleKind::semistable_flat)
            return make_curve_ring(bundle.rank, bundle.det_coeffs.at(0));
        return std::nullopt;
    }
    if (base.kind == BaseKind::projective_space) {
        if (bundle.kind == BundleKind::split_pn)
            return make_split_pn_ring(base.dim, bundle.twists);
        if (bundle.kind == BundleKind::tangent_pn && bundle.tangent_twist == 0)
            return make_tangent_pn_ring(base.dim);
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

using Monomials = std::map<std::pair<int, int>, Rational>; // (xi_exp, b_exp) -> coeff

void add_term(Monomials& poly, int i, int j, const Rational& c) {
    if (c == 0)
        return;
    auto key = std::make_pair(i, j);
    auto it = poly.find(key);
    if (it == poly.end())
        poly.emplace(key, c);
    else {
        it->second += c;
        if (it->second == 0)
            poly.erase(it);
    }
}

/// Rewrites all xi-exponents below rank using the Grothendieck relation,
/// dropping base exponents above base_dim.
Monomials reduce(const IntersectionRing& ring, Monomials poly) {
    const int r = ring.rank;
    const int n = ring.base_dim;
    bool changed = true;
    while (changed) {
        changed = false;
        Monomials next;
        for (const auto& [key, coeff] : poly) {
            auto [i, j] = key;
            if (j > n)
                continue;
            if (i < r) {
                add_term(next, i, j, coeff);
                continue;
            }
            changed = true;
            // xi^i = xi^{i-r} * sum_k (-1)^{k+1} c_k B^k xi^{r-k}
            for (size_t k = 1; k <= ring.chern.size(); ++k) {
                Rational c = ring.chern[k - 1] * coeff;
                if ((k + 1) % 2 == 1)
                    c = -c;
                add_term(next, i - static_cast<int>(k), j + static_cast<int>(k), c);
            }
        }
        poly = std::move(next);
    }
    return poly;
}

Monomials multiply(const IntersectionRing& ring, const Monomials& a, const Monomials& b) {
    Monomials out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            add_term(out, ka.first + kb.first, ka.second + kb.second, ca * cb);
    return reduce(ring, std::move(out));
}

Monomials divisor_poly(const IntersectionRing& ring, const PEDivisorClass& cls) {
    if (!cls.t_free())
        throw error("top intersection requires t-free classes");
    if (cls.base_part.size() != 1)
        throw error("intersection ring supports one base coordinate (curve / P^n)");
    Monomials poly;
    add_term(poly, 1, 0, cls.xi.constant);
    add_term(poly, 0, 1, cls.base_part[0].constant);
    return reduce(ring, std::move(poly));
}

Rational top_coefficient(const IntersectionRing& ring, const Monomials& poly) {
    auto it = poly.find(std::make_pair(ring.rank - 1, ring.base_dim));
    return it == poly.end() ? Rational(0) : it->second;
}

} // namespace

PEDivisorClass canonical_class(const BaseVariety& base, const BundleDescriptor& bundle) {
    if (bundle.rank < 2)
        throw error("canonical class needs rank >= 2");
    if (!compatible(bundle, base))
        throw error("bundle kind " + to_string(bundle.kind) + " is not supported on a " +
                    to_string(base.kind) + " base");
    std::vector<Rational> k = canonical_coefficients(base);
    std::vector<Rational> det = det_class(bundle, base);
    if (k.size() != det.size())
        throw error("canonical/determinant coefficient length mismatch");
    PEDivisorClass out;
    out.xi = LinPoly::of(Rational(-bundle.rank));
    out.base_part.reserve(k.size());
    for (size_t i = 0; i < k.size(); ++i)
        out.base_part.push_back(LinPoly::of(k[i] + det[i]));
    return out;
}

PEDivisorClass adjoint_class(const BaseVariety& base, const BundleDescriptor& bundle,
                             const Int& m, const std::vector<Rational>& n_class) {
    if (m <= 0)
        throw error("divisor m xi + pi^* N requires m >= 1");
    if (n_class.size() != base.coefficient_length())
        throw error("N has " + std::to_string(n_class.size()) + " coefficients, base expects " +
                    std::to_string(base.coefficient_length()));
    PEDivisorClass out = canonical_class(base, bundle);
    out.xi.slope += Rational(m);
    for (size_t i = 0; i < n_class.size(); ++i)
        out.base_part[i].slope += n_class[i];
    return out;
}

Rational top_intersection(const IntersectionRing& ring, const std::vector<PEDivisorClass>& classes) {
    if (static_cast<int>(classes.size()) != ring.top_degree())
        throw error("top intersection needs exactly " + std::to_string(ring.top_degree()) +
                    " classes, got " + std::to_string(classes.size()));
    Monomials product;
    add_term(product, 0, 0, Rational(1));
    for (const auto& cls : classes)
        product = multiply(ring, product, divisor_poly(ring, cls));
    return top_coefficient(ring, product);
}

Rational pair_divisor_curve(const PEDivisorClass& divisor, const PECurveClass& curve,
                            const IntersectionRing& ring) {
    if (curve.basis == CurveBasis::toric_generator)
        throw error("toric curve generators pair through slope data, not the ring");
    if (!divisor.t_free())
        throw error("pairing requires a t-free divisor class");
    // Curve class as a polynomial of degree rank-1+base_dim-1 in (xi, B):
    // fiber generator xi^{r-2} F = xi^{r-2} B^n, section generator
    // xi^{r-1} - l_c xi^{r-2} B^n (curve base: n = 1).
    if (ring.base_kind != BaseKind::curve)
        throw error("curve-class pairing is defined over curve bases");
    Monomials cycle;
    add_term(cycle, ring.rank - 2, 1, curve.fiber_coeff);
    add_term(cycle, ring.rank - 1, 0, curve.section_coeff);
    add_term(cycle, ring.rank - 2, 1, -curve.l_c * curve.section_coeff);
    Monomials product = multiply(ring, reduce(ring, std::move(cycle)), divisor_poly(ring, divisor));
    return top_coefficient(ring, product);
}

} // namespace pepos
