#pragma once

#include <string>
#include <vector>

#include "pepos/serrano.hpp"

namespace pepos::fixtures {

struct FixtureResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> checks; // "ok: ..." / "FAIL: ..." lines
};

/// Runs the embedded corpus of worked examples and theorem instances and
/// checks every stated numerical identity (determinant classes, adjoint
/// classes, verdicts, thresholds).
std::vector<FixtureResult> run_paper_examples(bool use_certificates = true);

} // namespace pepos::fixtures
