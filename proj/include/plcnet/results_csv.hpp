#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plcnet/engine.hpp"

namespace plcnet::csv {

inline constexpr const char* kHeader = "protocol,n_node,ratio,trial,elapsed_us,nc_count,data_frames,preambles,layers";

/// Header line followed by one line per row. Ratios use the shortest
/// representation that parses back to the same double.
void write_rows(std::ostream& out, const std::vector<engine::ResultRow>& rows);

std::string format_row(const engine::ResultRow& row);

/// Throws std::runtime_error naming the offending line on malformed input.
std::vector<engine::ResultRow> read_rows(std::istream& in);

}  // namespace plcnet::csv
