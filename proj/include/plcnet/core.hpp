#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plcnet {

/// Durations are integer microseconds everywhere in the simulator.
using Micros = std::int64_t;

/// The four preamble kinds: data-frame header, downlink PTE, uplink PTE, acknowledgment.
enum class PreambleKind { DAT, NET, REQ, ACK };

enum class FrameKind {
    SlotCountFrame,
    TDF,
    SDF,
    MacAddressFrame,
    TimeDiffFrame,
    SidFrame,
    Beacon,
    SdfReport,
    CentralBeacon,
    ProxyBeacon,
    AssocReq,
    AssocInd,
};

inline constexpr FrameKind kAllFrameKinds[] = {
    FrameKind::SlotCountFrame, FrameKind::TDF,          FrameKind::SDF,
    FrameKind::MacAddressFrame, FrameKind::TimeDiffFrame, FrameKind::SidFrame,
    FrameKind::Beacon,         FrameKind::SdfReport,    FrameKind::CentralBeacon,
    FrameKind::ProxyBeacon,    FrameKind::AssocReq,     FrameKind::AssocInd,
};

enum class Role { CCO, PCO, STA };

struct NodeId {
    std::uint32_t id = 0;
    Role role = Role::STA;

    friend bool operator==(const NodeId&, const NodeId&) = default;
};

/// Short network address handed out at join time.
struct Sid {
    std::uint32_t value = 1;
};

/// Hands out SIDs in strictly increasing order starting from 1.
class SidAllocator {
public:
    Sid next() { return Sid{++largest_}; }
    std::uint32_t largest() const { return largest_; }

private:
    std::uint32_t largest_ = 0;
};

/// Slot durations per frame/preamble kind.
struct TimingTable {
    Micros data_frame_slot_us = 20000;
    Micros preamble_slot_us = 400;
    Micros central_beacon_slot_us = 12000;
    Micros proxy_beacon_slot_us = 12000;
    Micros assoc_req_slot_us = 20000;
    Micros assoc_ind_slot_us = 20000;

    friend bool operator==(const TimingTable&, const TimingTable&) = default;

    /// Throws std::invalid_argument if any slot is not strictly positive.
    void validate() const;

    Micros slot_for(FrameKind kind) const;
    Micros slot_for(PreambleKind kind) const;
};

TimingTable default_timing_table();

/// Flat `key = value` lines, one per field.
std::string to_text(const TimingTable& table);
TimingTable timing_table_from_text(std::string_view text);

enum class Protocol { EPMAC, PMAC, IEEE1901 };

inline constexpr Protocol kAllProtocols[] = {Protocol::EPMAC, Protocol::PMAC,
                                             Protocol::IEEE1901};

std::string_view protocol_tag(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view tag);

/// Tuning constants of the adaptive PTE slot-count controller.
struct AllocParams {
    std::uint64_t n0 = 1;
    std::uint32_t t_f_max = 3;
    double eta_min = 0.35;
    double k1 = 1.3;
    double k2 = 2.0;

    void validate() const;
    friend bool operator==(const AllocParams&, const AllocParams&) = default;
};

struct RunConfig {
    Protocol protocol = Protocol::EPMAC;
    std::uint32_t n_node = 1;
    /// N_slot / N_node.
    double slot_ratio = 1.0;
    TimingTable timing = default_timing_table();
    std::uint64_t seed = 0;
    /// Total networking cycles allowed in one formation run.
    std::uint64_t max_nc = 1'000'000;
    AllocParams alloc_params{};
    double csma_p = 0.75;
    std::uint32_t tdf_capacity = 20;
    std::uint32_t sdf_capacity = 10;
    bool multi_layer = false;
    std::uint32_t max_layers = 6;

    void validate() const;
};

/// ceil(factor * count) with a relative tolerance so products such as
/// 1.3 * 40 that land a few ulps above an integer are not bumped up.
std::uint64_t scaled_ceil(double factor, std::uint64_t count);

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace plcnet
