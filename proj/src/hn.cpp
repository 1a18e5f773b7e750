#include "pepos/hn.hpp"

#include <algorithm>
#include <map>

namespace pepos {

int HNType::total_rank() const {
    int r = 0;
    for (const auto& b : blocks)
        r += b.rank;
    return r;
}

Rational HNType::total_degree() const {
    Rational d(0);
    for (const auto& b : blocks)
        d += Rational(b.rank) * b.slope;
    return d;
}

Rational HNType::mu_min() const {
    if (blocks.empty())
        throw error("empty HN type");
    return blocks.back().slope;
}

Rational HNType::mu_max() const {
    if (blocks.empty())
        throw error("empty HN type");
    return blocks.front().slope;
}

Rational HNType::mu() const {
    return total_degree() / Rational(total_rank());
}

HNType HNType::shifted(const Rational& k) const {
    HNType out = *this;
    for (auto& b : out.blocks)
        b.slope += k;
    return out;
}

void HNType::validate() const {
    if (blocks.empty())
        throw error("HN type must have at least one block");
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].rank <= 0)
            throw error("HN block rank must be positive");
        if (i > 0 && !(blocks[i - 1].slope > blocks[i].slope))
            throw error("HN slopes must be strictly decreasing");
    }
}

HNType hn_of_slopes(const std::vector<Rational>& degrees) {
    if (degrees.empty())
        throw error("hn_of_split: empty degree list");
    std::map<Rational, int, std::greater<Rational>> grouped;
    for (const Rational& d : degrees)
        ++grouped[d];
    HNType hn;
    for (const auto& [slope, rank] : grouped)
        hn.blocks.push_back(HNBlock{rank, slope});
    return hn;
}

HNType hn_of_split(const std::vector<Int>& degrees) {
    std::vector<Rational> slopes;
    slopes.reserve(degrees.size());
    for (const Int& d : degrees)
        slopes.emplace_back(d);
    return hn_of_slopes(slopes);
}

} // namespace pepos
