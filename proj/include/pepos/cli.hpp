#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pepos::cli {

/// Runs the command line given argv-style arguments (without the program
/// name). Exit codes: 0 verified/pass, 1 not verified / hypotheses unmet
/// / refuted, 2 invalid input, 3 unknown (soundness insufficient).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pepos::cli
