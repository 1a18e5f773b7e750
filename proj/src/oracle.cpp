#include "pepos/oracle.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "pepos/cones.hpp"
#include "pepos/toricfan.hpp"

namespace pepos::oracle {

OracleGrid OracleGrid::default_grid() {
    OracleGrid grid;
    grid.blocks = {GridBlock{1, 2, 0, 3}, GridBlock{1, 3, 0, 3}, GridBlock{2, 2, 0, 2}};
    return grid;
}

OracleGrid OracleGrid::parse(const std::string& spec) {
    if (spec.empty() || spec == "default")
        return default_grid();
    OracleGrid grid;
    std::stringstream stream(spec);
    std::string item;
    while (std::getline(stream, item, ',')) {
        GridBlock block;
        std::stringstream fields(item);
        std::string base, rank, lo, hi;
        if (!std::getline(fields, base, ':') || !std::getline(fields, rank, ':') ||
            !std::getline(fields, lo, ':') || !std::getline(fields, hi, ':'))
            throw error("grid item '" + item + "': expected base:rank:twist_min:twist_max");
        if (base == "p1")
            block.base_dim = 1;
        else if (base == "p2")
            block.base_dim = 2;
        else
            throw error("grid base must be p1 or p2");
        block.rank = std::stoi(rank);
        block.twist_min = std::stoi(lo);
        block.twist_max = std::stoi(hi);
        if (block.rank < 2 || block.rank > 3)
            throw error("grid rank must be 2 or 3 (documented oracle limits)");
        if (block.twist_min > block.twist_max)
            throw error("grid twist range is empty");
        grid.blocks.push_back(block);
    }
    if (grid.blocks.empty())
        throw error("empty oracle grid");
    return grid;
}

namespace {

/// Non-decreasing twist tuples in [lo, hi]^rank.
std::vector<std::vector<Int>> twist_tuples(const GridBlock& block) {
    std::vector<std::vector<Int>> out;
    std::vector<long> tuple(static_cast<size_t>(block.rank), block.twist_min);
    while (true) {
        bool sorted = true;
        for (size_t i = 1; i < tuple.size(); ++i)
            if (tuple[i - 1] > tuple[i]) sorted = false;
        if (sorted)
            out.emplace_back(tuple.begin(), tuple.end());
        size_t i = 0;
        while (i < tuple.size() && tuple[i] == block.twist_max)
            tuple[i++] = block.twist_min;
        if (i == tuple.size()) break;
        ++tuple[i];
    }
    return out;
}

struct BundleTask {
    int base_dim;
    std::vector<Int> twists;
};

std::string instance_string(const BundleTask& task, long y0, long gamma, const char* what,
                            bool criterion, bool oracle) {
    std::ostringstream out;
    out << "P^" << task.base_dim << " split [";
    for (size_t i = 0; i < task.twists.size(); ++i)
        out << (i ? "," : "") << task.twists[i];
    out << "], class " << y0 << " xi + " << gamma << " H, " << what << ": criterion="
        << (criterion ? "true" : "false") << " oracle=" << (oracle ? "true" : "false");
    return out.str();
}

std::vector<Disagreement> run_bundle(const BundleTask& task, const OracleGrid& grid,
                                     long* instances) {
    std::vector<Disagreement> bad;
    BaseVariety base = make_projective_space(task.base_dim);
    BundleDescriptor bundle = make_split(task.twists);

    toric::Fan base_fan = toric::projective_space_fan(task.base_dim);
    toric::SplitProjectivization pe = toric::projectivize_split(base_fan, task.twists);
    std::vector<toric::Wall> pe_walls = toric::walls(pe.fan);

    for (long y0 = grid.y0_min; y0 <= grid.y0_max; ++y0) {
        for (long gamma = grid.gamma_min; gamma <= grid.gamma_max; ++gamma) {
            PEDivisorClass cls = constant_pe_class(Rational(y0), {Rational(gamma)});
            bool crit_ample = is_ample(base, bundle, cls).verdict;
            bool crit_nef = is_nef(base, bundle, cls).verdict;

            toric::ToricDivisor divisor = toric::lift_class(pe, Rational(y0), Rational(gamma));
            bool fan_ample = true, fan_nef = true;
            for (const auto& wall : pe_walls) {
                Rational margin = toric::intersect(pe.fan, divisor, wall);
                if (margin <= 0) fan_ample = false;
                if (margin < 0) fan_nef = false;
            }
            ++*instances;
            if (crit_ample != fan_ample)
                bad.push_back(Disagreement{
                    instance_string(task, y0, gamma, "ample", crit_ample, fan_ample)});
            if (crit_nef != fan_nef)
                bad.push_back(
                    Disagreement{instance_string(task, y0, gamma, "nef", crit_nef, fan_nef)});
        }
    }
    return bad;
}

} // namespace

OracleReport run_oracle_check(const OracleGrid& grid, int jobs) {
    std::vector<BundleTask> tasks;
    for (const auto& block : grid.blocks) {
        if (block.rank < 2 || block.rank > 3 || (block.base_dim != 1 && block.base_dim != 2))
            throw error("oracle grid outside documented limits (rank <= 3, base P^1 or P^2)");
        for (auto& twists : twist_tuples(block))
            tasks.push_back(BundleTask{block.base_dim, std::move(twists)});
    }

    std::vector<std::vector<Disagreement>> results(tasks.size());
    std::vector<long> counts(tasks.size(), 0);
    if (jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i)
            results[i] = run_bundle(tasks[i], grid, &counts[i]);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    results[i] = run_bundle(tasks[i], grid, &counts[i]);
                }
            });
        for (auto& worker : workers)
            worker.join();
    }

    OracleReport report;
    report.bundles = static_cast<long>(tasks.size());
    for (size_t i = 0; i < tasks.size(); ++i) {
        report.instances += counts[i];
        for (auto& d : results[i])
            report.disagreements.push_back(std::move(d));
    }
    return report;
}

} // namespace pepos::oracle
