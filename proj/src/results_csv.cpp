#include "plcnet/results_csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include <fmt/format.h>

namespace plcnet::csv {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error(fmt::format("csv line {}: bad field '{}'", line_no, text));
    }
    return value;
}

double parse_double(std::string_view text, std::size_t line_no) {
    // libstdc++ 11 has no floating-point from_chars.
    const std::string owned(text);
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(owned, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (owned.empty() || used != owned.size()) {
        throw std::runtime_error(fmt::format("csv line {}: bad ratio '{}'", line_no, text));
    }
    return value;
}

}  // namespace

std::string format_row(const engine::ResultRow& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{}", protocol_tag(r.protocol), r.n_node, r.ratio, r.trial,
                       r.elapsed_us, r.nc_count, r.data_frames, r.preambles, r.layers);
}

void write_rows(std::ostream& out, const std::vector<engine::ResultRow>& rows) {
    out << kHeader << '\n';
    for (const auto& r : rows) out << format_row(r) << '\n';
}

std::vector<engine::ResultRow> read_rows(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw std::runtime_error("csv: unexpected header: " + line);

    std::vector<engine::ResultRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 9) throw std::runtime_error(fmt::format("csv line {}: expected 9 fields", line_no));
        const auto protocol = parse_protocol(f[0]);
        if (!protocol) throw std::runtime_error(fmt::format("csv line {}: unknown protocol '{}'", line_no, f[0]));
        engine::ResultRow r;
        r.protocol = *protocol;
        r.n_node = parse_field<std::uint32_t>(f[1], line_no);
        r.ratio = parse_double(f[2], line_no);
        r.trial = parse_field<std::uint32_t>(f[3], line_no);
        r.elapsed_us = parse_field<Micros>(f[4], line_no);
        r.nc_count = parse_field<std::uint64_t>(f[5], line_no);
        r.data_frames = parse_field<std::uint64_t>(f[6], line_no);
        r.preambles = parse_field<std::uint64_t>(f[7], line_no);
        r.layers = parse_field<std::uint32_t>(f[8], line_no);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace plcnet::csv
