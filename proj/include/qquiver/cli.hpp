#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qquiver {

// Process exit codes. When several apply the most severe wins, in the order
// mismatch > cap exceeded > ambiguity.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitMismatch = 2,
    kExitAmbiguous = 3,
    kExitCapExceeded = 4,
};

/// Folds two outcomes into the more severe one.
int worse_exit(int a, int b);

/// "2..9", "5,7", "3", "0..4,9" and combinations; sorted and deduplicated.
/// An empty string gives an empty list. Throws std::invalid_argument.
std::vector<std::uint64_t> parse_range(std::string_view text);

/// Runs the `qquiver` command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qquiver
