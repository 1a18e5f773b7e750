#pragma once

#include <string>
#include <vector>

#include "pepos/rational.hpp"

namespace pepos::oracle {

/// One block of the equivalence grid: split bundles of the given rank
/// over P^n, twists ranging over [twist_min, twist_max]. Documented
/// limits: rank <= 3, n in {1, 2}.
struct GridBlock {
    int base_dim = 1;
    int rank = 2;
    int twist_min = 0;
    int twist_max = 3;
};

struct OracleGrid {
    std::vector<GridBlock> blocks;
    long y0_min = -1, y0_max = 3;   // xi coefficient sweep
    long gamma_min = -2, gamma_max = 3;

    static OracleGrid default_grid();
    /// "p1:2:0:3,p1:3:0:3,p2:2:0:2" (base:rank:twist_min:twist_max).
    static OracleGrid parse(const std::string& spec);
};

struct Disagreement {
    std::string instance;
};

struct OracleReport {
    long instances = 0;
    long bundles = 0;
    std::vector<Disagreement> disagreements;
};

/// Compares the slope criterion against the toric fan oracle on every
/// (bundle, divisor) pair of the grid, for both nef and ample.
/// jobs <= 1 runs sequentially; results are deterministic either way.
OracleReport run_oracle_check(const OracleGrid& grid, int jobs = 1);

} // namespace pepos::oracle
