#include "pepos/toricfan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pepos::toric {

namespace {

Int gcd_of(const LatticeVector& v) {
    Int g = 0;
    for (const Int& x : v)
        g = boost::multiprecision::gcd(g, x);
    return g;
}

bool is_zero(const LatticeVector& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

/// Determinant of a square rational matrix by fraction elimination.
Rational determinant(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rational f = m[row][col] / m[col][col];
            for (size_t k = col; k < n; ++k)
                m[row][k] -= f * m[col][k];
        }
    }
    return det;
}

std::vector<std::vector<Rational>> cone_matrix(const Fan& fan, const std::vector<int>& cone) {
    const size_t d = static_cast<size_t>(fan.lattice_dim);
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(cone.size(), Rational(0)));
    for (size_t j = 0; j < cone.size(); ++j)
        for (size_t i = 0; i < d; ++i)
            m[i][j] = Rational(fan.rays[static_cast<size_t>(cone[j])][i]);
    return m;
}

/// Facet -> list of (cone index, opposite ray index).
std::map<std::vector<int>, std::vector<std::pair<int, int>>> facet_map(const Fan& fan) {
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> facets;
    for (size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        for (size_t drop = 0; drop < cone.size(); ++drop) {
            std::vector<int> facet;
            facet.reserve(cone.size() - 1);
            for (size_t k = 0; k < cone.size(); ++k)
                if (k != drop) facet.push_back(cone[k]);
            std::sort(facet.begin(), facet.end());
            facets[facet].emplace_back(static_cast<int>(c), cone[drop]);
        }
    }
    return facets;
}

std::vector<std::vector<Rational>> sample_directions(int d) {
    std::vector<std::vector<Rational>> dirs;
    std::vector<int> v(static_cast<size_t>(d), -1);
    while (true) {
        bool zero = true;
        for (int x : v)
            if (x != 0) zero = false;
        if (!zero)
            dirs.emplace_back(v.begin(), v.end());
        int i = 0;
        while (i < d && v[static_cast<size_t>(i)] == 1)
            v[static_cast<size_t>(i++)] = -1;
        if (i == d) break;
        ++v[static_cast<size_t>(i)];
    }
    return dirs;
}

bool cone_contains(const Fan& fan, const std::vector<int>& cone, const std::vector<Rational>& x) {
    auto m = cone_matrix(fan, cone);
    auto sol = solve_linear(m, x);
    if (!sol) return false;
    for (const Rational& c : *sol)
        if (c < 0) return false;
    return true;
}

} // namespace

std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && a[pivot][col] == 0)
            ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[row]);
        std::swap(b[pivot], b[row]);
        for (size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 == row || a[r2][col] == 0) continue;
            Rational f = a[r2][col] / a[row][col];
            for (size_t k = col; k < cols; ++k)
                a[r2][k] -= f * a[row][k];
            b[r2] -= f * b[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (size_t r2 = row; r2 < rows; ++r2)
        if (b[r2] != 0)
            return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (size_t r2 = 0; r2 < row; ++r2)
        x[pivot_col_of_row[r2]] = b[r2] / a[r2][pivot_col_of_row[r2]];
    return x;
}

bool fan_contains_direction(const Fan& fan, const std::vector<Rational>& direction) {
    for (const auto& cone : fan.max_cones)
        if (cone_contains(fan, cone, direction))
            return true;
    return false;
}

void validate_fan(const Fan& fan) {
    const int d = fan.lattice_dim;
    if (d < 1)
        throw error("fan: lattice dimension must be >= 1");
    if (fan.rays.empty() || fan.max_cones.empty())
        throw error("fan: rays and maximal cones required");

    std::set<LatticeVector> seen;
    for (const auto& ray : fan.rays) {
        if (static_cast<int>(ray.size()) != d)
            throw error("fan: ray dimension mismatch");
        if (is_zero(ray))
            throw error("fan: zero ray");
        if (gcd_of(ray) != 1)
            throw error("fan: ray not primitive");
        if (!seen.insert(ray).second)
            throw error("fan: duplicate ray");
    }

    for (const auto& cone : fan.max_cones) {
        if (static_cast<int>(cone.size()) != d)
            throw error("fan: maximal cone must have exactly lattice_dim rays");
        std::set<int> distinct(cone.begin(), cone.end());
        if (static_cast<int>(distinct.size()) != d)
            throw error("fan: repeated ray in maximal cone");
        for (int idx : cone)
            if (idx < 0 || idx >= static_cast<int>(fan.rays.size()))
                throw error("fan: cone ray index out of range");
        Rational det = determinant(cone_matrix(fan, cone));
        if (det != 1 && det != -1)
            throw error("fan not smooth: maximal cone rays are not a lattice basis");
    }

    // Completeness: every facet interior to exactly two maximal cones ...
    auto facets = facet_map(fan);
    for (const auto& [facet, owners] : facets) {
        if (owners.size() != 2)
            throw error("fan not complete: facet shared by " + std::to_string(owners.size()) +
                        " maximal cones");
    }
    // ... the wall-adjacency graph is connected ...
    std::vector<int> component(fan.max_cones.size(), -1);
    std::vector<size_t> stack{0};
    component[0] = 0;
    std::multimap<int, int> adjacency;
    for (const auto& [facet, owners] : facets) {
        adjacency.emplace(owners[0].first, owners[1].first);
        adjacency.emplace(owners[1].first, owners[0].first);
    }
    while (!stack.empty()) {
        size_t c = stack.back();
        stack.pop_back();
        auto [lo, hi] = adjacency.equal_range(static_cast<int>(c));
        for (auto it = lo; it != hi; ++it) {
            if (component[static_cast<size_t>(it->second)] == -1) {
                component[static_cast<size_t>(it->second)] = 0;
                stack.push_back(static_cast<size_t>(it->second));
            }
        }
    }
    for (int comp : component)
        if (comp == -1)
            throw error("fan not complete: maximal cones not wall-connected");
    // ... and the support contains a deterministic direction sample.
    for (const auto& direction : sample_directions(d))
        if (!fan_contains_direction(fan, direction))
            throw error("fan not complete: sampled direction outside support");
}

Fan projective_space_fan(int n) {
    if (n < 1)
        throw error("projective_space fan: n >= 1 required");
    Fan fan;
    fan.lattice_dim = n;
    for (int i = 0; i < n; ++i) {
        LatticeVector e(static_cast<size_t>(n), Int(0));
        e[static_cast<size_t>(i)] = 1;
        fan.rays.push_back(std::move(e));
    }
    fan.rays.emplace_back(static_cast<size_t>(n), Int(-1));
    for (int drop = n; drop >= 0; --drop) {
        std::vector<int> cone;
        for (int i = 0; i <= n; ++i)
            if (i != drop) cone.push_back(i);
        fan.max_cones.push_back(std::move(cone));
    }
    std::sort(fan.max_cones.begin(), fan.max_cones.end());
    return fan;
}

Fan hirzebruch_fan(const Int& e) {
    if (e < 0)
        throw error("hirzebruch fan: e >= 0 required");
    Fan fan;
    fan.lattice_dim = 2;
    fan.rays = {{Int(1), Int(0)}, {Int(-1), e}, {Int(0), Int(1)}, {Int(0), Int(-1)}};
    fan.max_cones = {{0, 2}, {1, 2}, {1, 3}, {0, 3}};
    return fan;
}

Fan product_p1_p1_fan() {
    Fan fan;
    fan.lattice_dim = 2;
    fan.rays = {{Int(1), Int(0)}, {Int(-1), Int(0)}, {Int(0), Int(1)}, {Int(0), Int(-1)}};
    fan.max_cones = {{0, 2}, {1, 2}, {1, 3}, {0, 3}};
    return fan;
}

std::vector<Wall> walls(const Fan& fan) {
    validate_fan(fan);
    const size_t d = static_cast<size_t>(fan.lattice_dim);
    std::vector<Wall> result;
    for (const auto& [facet, owners] : facet_map(fan)) {
        Wall wall;
        wall.ray_indices = facet;
        wall.adjacent_cones = {owners[0].first, owners[1].first};
        wall.opposite_rays = {owners[0].second, owners[1].second};
        // Solve sum b_i u_{rho_i} = -(u_v + u_v') exactly.
        std::vector<std::vector<Rational>> a(d, std::vector<Rational>(facet.size(), Rational(0)));
        std::vector<Rational> rhs(d, Rational(0));
        for (size_t j = 0; j < facet.size(); ++j)
            for (size_t i = 0; i < d; ++i)
                a[i][j] = Rational(fan.rays[static_cast<size_t>(facet[j])][i]);
        const auto& v = fan.rays[static_cast<size_t>(wall.opposite_rays[0])];
        const auto& vp = fan.rays[static_cast<size_t>(wall.opposite_rays[1])];
        for (size_t i = 0; i < d; ++i)
            rhs[i] = -Rational(v[i] + vp[i]);
        auto sol = solve_linear(a, rhs);
        if (!sol)
            throw error("wall relation has no solution (fan invalid)");
        for (const Rational& c : *sol) {
            if (denominator(c) != 1)
                throw error("wall relation not integral (fan not smooth)");
            wall.relation.push_back(numerator(c));
        }
        result.push_back(std::move(wall));
    }
    // facet_map iterates in sorted facet order already; label accordingly.
    for (size_t k = 0; k < result.size(); ++k)
        result[k].label = "w" + std::to_string(k);
    return result;
}

Rational intersect(const Fan& fan, const ToricDivisor& divisor, const Wall& wall) {
    if (divisor.coefficients.size() != fan.rays.size())
        throw error("toric divisor has " + std::to_string(divisor.coefficients.size()) +
                    " coefficients, fan has " + std::to_string(fan.rays.size()) + " rays");
    Rational value = divisor.coefficients[static_cast<size_t>(wall.opposite_rays[0])] +
                     divisor.coefficients[static_cast<size_t>(wall.opposite_rays[1])];
    for (size_t j = 0; j < wall.ray_indices.size(); ++j)
        value += Rational(wall.relation[j]) *
                 divisor.coefficients[static_cast<size_t>(wall.ray_indices[j])];
    return value;
}

namespace {

WallCheck wall_check(const Fan& fan, const ToricDivisor& divisor, bool strict) {
    WallCheck report;
    report.verdict = true;
    for (const Wall& wall : walls(fan)) {
        Rational margin = intersect(fan, divisor, wall);
        if (strict ? margin <= 0 : margin < 0)
            report.verdict = false;
        report.margins.emplace_back(wall.label, std::move(margin));
    }
    return report;
}

} // namespace

WallCheck toric_nef(const Fan& fan, const ToricDivisor& divisor) {
    return wall_check(fan, divisor, false);
}

WallCheck toric_ample(const Fan& fan, const ToricDivisor& divisor) {
    return wall_check(fan, divisor, true);
}

ToricDivisor anti_canonical_divisor(const Fan& fan) {
    return ToricDivisor{std::vector<Rational>(fan.rays.size(), Rational(1))};
}

SplitProjectivization projectivize_split(const Fan& base_fan, std::vector<Int> twists) {
    validate_fan(base_fan);
    const int r = static_cast<int>(twists.size());
    if (r < 2)
        throw error("projectivize_split: rank >= 2 required");

    const int d = base_fan.lattice_dim;
    // Twisting divisor support: the single ray -sum(e_i).
    LatticeVector support(static_cast<size_t>(d), Int(-1));
    int support_ray = -1;
    for (size_t i = 0; i < base_fan.rays.size(); ++i)
        if (base_fan.rays[i] == support) {
            support_ray = static_cast<int>(i);
            break;
        }
    if (support_ray < 0)
        throw error("projectivize_split: base fan has no ray -sum(e_i) to carry the twist");

    SplitProjectivization out;
    out.twist_shift = twists[0];
    for (Int& a : twists)
        a -= out.twist_shift;

    const int total = d + r - 1;
    Fan fan;
    fan.lattice_dim = total;
    const int nb = static_cast<int>(base_fan.rays.size());
    for (int i = 0; i < nb; ++i) {
        LatticeVector lift(static_cast<size_t>(total), Int(0));
        for (int k = 0; k < d; ++k)
            lift[static_cast<size_t>(k)] = base_fan.rays[static_cast<size_t>(i)][static_cast<size_t>(k)];
        if (i == support_ray)
            for (int j = 1; j < r; ++j)
                lift[static_cast<size_t>(d + j - 1)] = twists[static_cast<size_t>(j)];
        fan.rays.push_back(std::move(lift));
    }
    // Fiber rays f_1..f_{r-1}, then f_0 = -sum f_j.
    for (int j = 1; j < r; ++j) {
        LatticeVector f(static_cast<size_t>(total), Int(0));
        f[static_cast<size_t>(d + j - 1)] = 1;
        fan.rays.push_back(std::move(f));
    }
    LatticeVector f0(static_cast<size_t>(total), Int(0));
    for (int j = 1; j < r; ++j)
        f0[static_cast<size_t>(d + j - 1)] = -1;
    fan.rays.push_back(std::move(f0));
    out.xi_ray = nb + r - 1;

    // Maximal cones: lifted base cone x each facet of the fiber P^{r-1} fan.
    std::vector<int> fiber_rays;
    for (int j = 0; j < r; ++j)
        fiber_rays.push_back(nb + j);
    for (const auto& base_cone : base_fan.max_cones) {
        for (int drop = 0; drop < r; ++drop) {
            std::vector<int> cone = base_cone;
            for (int j = 0; j < r; ++j)
                if (j != drop) cone.push_back(fiber_rays[static_cast<size_t>(j)]);
            std::sort(cone.begin(), cone.end());
            fan.max_cones.push_back(std::move(cone));
        }
    }
    std::sort(fan.max_cones.begin(), fan.max_cones.end());
    validate_fan(fan);

    for (int i = 0; i < nb; ++i)
        if (i != support_ray) {
            out.base_o1_ray = i;
            break;
        }
    out.fan = std::move(fan);
    return out;
}

ToricDivisor lift_class(const SplitProjectivization& pe, const Rational& y0, const Rational& gamma) {
    ToricDivisor divisor{std::vector<Rational>(pe.fan.rays.size(), Rational(0))};
    divisor.coefficients[static_cast<size_t>(pe.xi_ray)] = y0;
    // xi of the original twists is xi_normalized + a_1 * pi^* O(1).
    divisor.coefficients[static_cast<size_t>(pe.base_o1_ray)] += gamma + y0 * Rational(pe.twist_shift);
    return divisor;
}

} // namespace pepos::toric
