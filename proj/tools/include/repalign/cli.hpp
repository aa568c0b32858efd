#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace repalign::cli {

/// Seed used by every randomized command when --seed is absent and
/// REPAIR_ALIGN_SEED is unset.
inline constexpr std::uint64_t default_seed = 2010;

/// default_seed, or the value of REPAIR_ALIGN_SEED when set.
std::uint64_t resolve_default_seed();

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 domain error (singular, infeasible, budget, MDS violation with
/// --fail-on-violation), 2 usage or input-format error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace repalign::cli
