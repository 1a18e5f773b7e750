#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pepos/rational.hpp"

namespace pepos::toric {

using LatticeVector = std::vector<Int>;

/// A fan given by primitive rays and maximal cones (ray-index sets of
/// size lattice_dim). Only smooth complete fans are accepted.
struct Fan {
    int lattice_dim = 0;
    std::vector<LatticeVector> rays;
    std::vector<std::vector<int>> max_cones;
};

/// A codimension-1 cone shared by exactly two maximal cones. The wall
/// relation u_v + u_v' + sum_i b_i u_{rho_i} = 0 encodes all divisor
/// intersection numbers with the corresponding invariant curve.
struct Wall {
    std::string label;                 // canonical "w<k>"
    std::vector<int> ray_indices;      // the d-1 shared rays, sorted
    std::array<int, 2> adjacent_cones; // indices into fan.max_cones
    std::array<int, 2> opposite_rays;  // v in cone 0, v' in cone 1
    std::vector<Int> relation;         // b_i aligned with ray_indices
};

/// Divisor sum a_rho D_rho, coefficients indexed like fan.rays.
struct ToricDivisor {
    std::vector<Rational> coefficients;
};

/// Checks primitivity of rays, smoothness (each maximal cone a lattice
/// basis), and completeness (every facet interior to exactly two cones,
/// wall-connectedness, directional membership sampling). Throws on failure.
void validate_fan(const Fan& fan);

bool fan_contains_direction(const Fan& fan, const std::vector<Rational>& direction);

Fan projective_space_fan(int n);
Fan hirzebruch_fan(const Int& e);
Fan product_p1_p1_fan();

/// Enumerates walls of a validated smooth complete fan, relations solved
/// exactly over the rationals with integrality asserted. Deterministic
/// order: sorted by ray-index set.
std::vector<Wall> walls(const Fan& fan);

/// D . C_tau = a_v + a_v' + sum b_i a_{rho_i}.
Rational intersect(const Fan& fan, const ToricDivisor& divisor, const Wall& wall);

struct WallCheck {
    bool verdict = false;
    std::vector<std::pair<std::string, Rational>> margins; // per-wall, wall order
};

WallCheck toric_nef(const Fan& fan, const ToricDivisor& divisor);
WallCheck toric_ample(const Fan& fan, const ToricDivisor& divisor);

/// -K_X = sum of all ray divisors.
ToricDivisor anti_canonical_divisor(const Fan& fan);

/// Fan of P(O(a_1) + ... + O(a_r)) over a P^n-type base fan, twists
/// normalized by subtracting a_1 (projectivization is twist-invariant).
/// The twisting divisor is supported on the ray -sum(e_i), which must be
/// present in the base fan.
struct SplitProjectivization {
    Fan fan;
    int xi_ray = -1;        // f_0: the class of O_{P(E)}(1) on the normalized bundle
    int base_o1_ray = -1;   // flat lift of e_1, representing pi^* O(1)
    Int twist_shift;        // a_1 subtracted during normalization
};

SplitProjectivization projectivize_split(const Fan& base_fan, std::vector<Int> twists);

/// Divisor of y0*xi + gamma*pi^*O(1) on the constructed fan, with xi the
/// tautological class of the original (un-normalized) twists.
ToricDivisor lift_class(const SplitProjectivization& pe, const Rational& y0, const Rational& gamma);

/// Solves A x = b exactly over the rationals by Gaussian elimination.
/// Returns nullopt when inconsistent; free variables are set to zero.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b);

} // namespace pepos::toric
