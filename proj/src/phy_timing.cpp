#include "plcnet/phy_timing.hpp"

#include <cmath>
#include <string>

namespace plcnet::phy_timing {

std::uint64_t ieee1901_symbol_count(const Ieee1901PhyParams& p) {
    if (p.n_b == 0 || p.n_c == 0) throw std::invalid_argument("ieee1901: bit length and carrier count must be positive");
    return (p.n_b + p.n_c - 1) / p.n_c;
}

double ieee1901_frame_time(const Ieee1901PhyParams& p) {
    const std::uint64_t ns = ieee1901_symbol_count(p);
    if (ns < 2) throw TooFewSymbols("ieee1901: frame needs at least 2 OFDM symbols, got " + std::to_string(ns));
    const double n = static_cast<double>(ns);
    return 40.96 * (13.0 + n) + 18.32 * 2.0 + (n - 2.0) * 10.8;
}

double fdplc_data_frame_time(const FdplcPhyParams& p) {
    if (p.bits == 0 || p.carriers == 0 || !(p.symbol_us > 0.0) || !(p.preamble_us > 0.0)) {
        throw std::invalid_argument("fdplc: parameters must be positive");
    }
    const double symbols = p.fractional_symbols
                               ? static_cast<double>(p.bits) / static_cast<double>(p.carriers)
                               : static_cast<double>((p.bits + p.carriers - 1) / p.carriers);
    return p.preamble_us + symbols * p.symbol_us;
}

double fdplc_preamble_time(std::uint64_t symbols, double symbol_us) {
    if (symbols == 0 || !(symbol_us > 0.0)) throw std::invalid_argument("fdplc: preamble needs at least one symbol");
    return static_cast<double>(symbols) * symbol_us;
}

}  // namespace plcnet::phy_timing
