#include "plcnet/core.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace plcnet {

void TimingTable::validate() const {
    for (FrameKind kind : kAllFrameKinds) {
        if (slot_for(kind) <= 0) throw std::invalid_argument("timing table: slot durations must be positive");
    }
    if (preamble_slot_us <= 0) throw std::invalid_argument("timing table: preamble slot must be positive");
}

Micros TimingTable::slot_for(FrameKind kind) const {
    switch (kind) {
        case FrameKind::SlotCountFrame:
        case FrameKind::TDF:
        case FrameKind::SDF:
        case FrameKind::MacAddressFrame:
        case FrameKind::TimeDiffFrame:
        case FrameKind::SidFrame:
        case FrameKind::Beacon:
        case FrameKind::SdfReport:
            return data_frame_slot_us;
        case FrameKind::CentralBeacon:
            return central_beacon_slot_us;
        case FrameKind::ProxyBeacon:
            return proxy_beacon_slot_us;
        case FrameKind::AssocReq:
            return assoc_req_slot_us;
        case FrameKind::AssocInd:
            return assoc_ind_slot_us;
    }
    throw std::logic_error("unknown frame kind");
}

Micros TimingTable::slot_for(PreambleKind) const { return preamble_slot_us; }

TimingTable default_timing_table() { return TimingTable{}; }

namespace {

struct TimingField {
    const char* key;
    Micros TimingTable::*member;
};

constexpr TimingField kTimingFields[] = {
    {"data_frame_slot_us", &TimingTable::data_frame_slot_us},
    {"preamble_slot_us", &TimingTable::preamble_slot_us},
    {"central_beacon_slot_us", &TimingTable::central_beacon_slot_us},
    {"proxy_beacon_slot_us", &TimingTable::proxy_beacon_slot_us},
    {"assoc_req_slot_us", &TimingTable::assoc_req_slot_us},
    {"assoc_ind_slot_us", &TimingTable::assoc_ind_slot_us},
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string to_text(const TimingTable& table) {
    std::ostringstream out;
    for (const auto& field : kTimingFields) out << field.key << " = " << table.*field.member << '\n';
    return out.str();
}

TimingTable timing_table_from_text(std::string_view text) {
    TimingTable table = default_timing_table();
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("timing table: expected key = value: " + line);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        bool known = false;
        for (const auto& field : kTimingFields) {
            if (key == field.key) {
                std::size_t used = 0;
                table.*field.member = std::stoll(value, &used);
                if (used != value.size()) throw std::invalid_argument("timing table: bad value for " + key);
                known = true;
            }
        }
        if (!known) throw std::invalid_argument("timing table: unknown key " + key);
    }
    table.validate();
    return table;
}

std::string_view protocol_tag(Protocol p) {
    switch (p) {
        case Protocol::EPMAC: return "epmac";
        case Protocol::PMAC: return "pmac";
        case Protocol::IEEE1901: return "ieee1901";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(std::string_view tag) {
    for (Protocol p : kAllProtocols) {
        if (protocol_tag(p) == tag) return p;
    }
    return std::nullopt;
}

void AllocParams::validate() const {
    if (n0 == 0) throw std::invalid_argument("alloc params: n0 must be positive");
    if (t_f_max == 0) throw std::invalid_argument("alloc params: t_f_max must be positive");
    if (!(eta_min > 0.0 && eta_min < 1.0)) throw std::invalid_argument("alloc params: eta_min must lie in (0, 1)");
    if (!(k1 > 1.0 && k2 > 1.0)) throw std::invalid_argument("alloc params: k1 and k2 must exceed 1");
    if (!(k1 < k2)) throw std::invalid_argument("alloc params: k1 must be smaller than k2");
}

void RunConfig::validate() const {
    timing.validate();
    alloc_params.validate();
    if (n_node == 0) throw std::invalid_argument("run config: n_node must be positive");
    if (!(slot_ratio > 0.0) || !std::isfinite(slot_ratio)) throw std::invalid_argument("run config: slot_ratio must be positive");
    if (max_nc == 0) throw std::invalid_argument("run config: max_nc must be positive");
    if (!(csma_p > 0.0 && csma_p <= 1.0)) throw std::invalid_argument("run config: csma_p must lie in (0, 1]");
    if (tdf_capacity == 0 || sdf_capacity == 0) throw std::invalid_argument("run config: frame capacities must be positive");
    if (max_layers == 0) throw std::invalid_argument("run config: max_layers must be positive");
}

std::uint64_t scaled_ceil(double factor, std::uint64_t count) {
    const double product = factor * static_cast<double>(count);
    const double nearest = std::round(product);
    if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, std::abs(product))) {
        return static_cast<std::uint64_t>(nearest);
    }
    return static_cast<std::uint64_t>(std::ceil(product));
}

}  // namespace plcnet
