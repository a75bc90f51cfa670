#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mwloc {

/// Exit codes: 0 success, 1 domain or configuration error, 2 numeric or
/// resource failure.
int run(int argc, char** argv);
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Fast internal consistency checks: route equivalence, closed form against
/// exhaustive oracles, correlator identities, reference states, eigensolver.
std::vector<SelftestResult> run_selftest(std::uint64_t seed);

}  // namespace mwloc
