#pragma once

#include <cstdint>
#include <stdexcept>

namespace plcnet::phy_timing {

class TooFewSymbols : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Ieee1901PhyParams {
    std::uint64_t n_b = 0;  // encoded bit length
    std::uint64_t n_c = 0;  // usable subcarriers
};

struct FdplcPhyParams {
    std::uint64_t bits = 8768;
    std::uint64_t carriers = 720;
    double symbol_us = 819.2;
    double preamble_us = 256.0;
    bool fractional_symbols = true;
};

/// Encoded lengths of IEEE1901.1 beacons and association messages after
/// turbo coding and ROBO interleaving, and the usable carrier count in a 3 MHz band.
inline constexpr std::uint64_t kIeeeBeaconBits = 21760;
inline constexpr std::uint64_t kIeeeMessageBits = 43520;
inline constexpr std::uint64_t kIeeeCarriers = 94;
/// Air-times quoted alongside those lengths. The frame-time formula does not reproduce them.
inline constexpr double kIeeeQuotedBeaconUs = 9102.0;
inline constexpr double kIeeeQuotedMessageUs = 17488.0;

inline constexpr double kFdplcPreambleSymbolUs = 51.2;
inline constexpr std::uint64_t kFdplcPreambleSymbols = 5;

std::uint64_t ieee1901_symbol_count(const Ieee1901PhyParams& p);

/// 40.96 (13 + N_s) + 18.32 * 2 + (N_s - 2) * 10.8 microseconds, N_s = ceil(n_b / n_c).
double ieee1901_frame_time(const Ieee1901PhyParams& p);

double fdplc_data_frame_time(const FdplcPhyParams& p);

double fdplc_preamble_time(std::uint64_t symbols, double symbol_us);

}  // namespace plcnet::phy_timing
