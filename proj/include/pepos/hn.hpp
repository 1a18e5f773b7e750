#pragma once

#include <vector>

#include "pepos/rational.hpp"

namespace pepos {

struct HNBlock {
    int rank = 0;
    Rational slope;
};

/// Harder-Narasimhan type: (rank, slope) of the semistable quotients,
/// slopes strictly decreasing.
struct HNType {
    std::vector<HNBlock> blocks;

    int total_rank() const;
    Rational total_degree() const;
    Rational mu_min() const; // slope of the last block
    Rational mu_max() const; // slope of the first block
    Rational mu() const;     // total_degree / total_rank
    bool semistable() const { return blocks.size() == 1; }

    /// Uniform slope shift (twist by a degree-k class on the curve).
    HNType shifted(const Rational& k) const;

    void validate() const; // nonempty, positive ranks, strictly decreasing slopes
};

/// HN type of a direct sum of line bundles on a rational curve: blocks
/// group equal degrees, sorted strictly decreasing.
HNType hn_of_split(const std::vector<Int>& degrees);

/// Same grading for rational degree lists (pullbacks multiply degrees by
/// the curve degree, which can leave integers).
HNType hn_of_slopes(const std::vector<Rational>& degrees);

} // namespace pepos
