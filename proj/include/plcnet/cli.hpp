#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plcnet/engine.hpp"

namespace plcnet::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kSimulation = 3 };

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads flat `key = value` lines; `#` starts a comment. Keys are flag names without dashes.
std::map<std::string, std::string> parse_config(std::string_view text);

struct GroupSummary {
    Protocol protocol = Protocol::EPMAC;
    std::uint32_t n_node = 0;
    std::optional<double> ratio;
    engine::SummaryStats stats;
};

/// Groups rows by (protocol, n_node) or, with `by_ratio`, by (protocol, n_node, ratio).
/// `best_ratio` groups by ratio and keeps, per (protocol, n_node), the ratio with the lowest mean.
std::vector<GroupSummary> summarize_rows(const std::vector<engine::ResultRow>& rows, bool by_ratio, bool best_ratio);

}  // namespace plcnet::cli
