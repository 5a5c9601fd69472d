#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ordstat::cli {

/// Exit codes: 0 all checks passed, 1 an inequality was violated, 2 usage or
/// configuration error (message and usage text on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// "1,2.5,4" → {1, 2.5, 4}; throws UsageError on malformed entries.
std::vector<double> parse_list(const std::string& text);

/// "loguniform:n=16,lo=0.1,hi=10,seed=3" → sorted x-sequence. lo, hi and
/// seed default to 0.1, 10 and `default_seed`.
std::vector<double> generate_sequence(const std::string& spec, unsigned long long default_seed);

}  // namespace ordstat::cli
