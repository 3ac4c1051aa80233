#include "doctest.h"

#include <cmath>

#include "plcnet/core.hpp"
#include "plcnet/phy_timing.hpp"

using namespace plcnet::phy_timing;

TEST_CASE("IEEE1901.1 frame time") {
    CHECK(ieee1901_symbol_count({21760, 94}) == 232);
    CHECK(ieee1901_frame_time({21760, 94}) == doctest::Approx(12555.84).epsilon(1e-9));
    CHECK(ieee1901_symbol_count({43520, 94}) == 463);
    CHECK(ieee1901_frame_time({43520, 94}) == doctest::Approx(24512.40).epsilon(1e-9));
    CHECK(ieee1901_frame_time({188, 94}) == doctest::Approx(651.04).epsilon(1e-9));
}

TEST_CASE("IEEE1901.1 formula does not reproduce the quoted air-times") {
    CHECK(std::abs(ieee1901_frame_time({kIeeeBeaconBits, kIeeeCarriers}) - kIeeeQuotedBeaconUs) > 1000.0);
    CHECK(std::abs(ieee1901_frame_time({kIeeeMessageBits, kIeeeCarriers}) - kIeeeQuotedMessageUs) > 1000.0);
}

TEST_CASE("too few symbols") {
    CHECK_THROWS_AS(ieee1901_frame_time({94, 94}), TooFewSymbols);
    CHECK_THROWS_AS(ieee1901_frame_time({1, 94}), TooFewSymbols);
    CHECK_NOTHROW(ieee1901_frame_time({95, 94}));
}

TEST_CASE("frame time is monotone in bit length") {
    double last = 0;
    for (std::uint64_t bits = 188; bits < 50000; bits += 37) {
        const double t = ieee1901_frame_time({bits, 94});
        REQUIRE(std::isfinite(t));
        REQUIRE(t >= last);
        last = t;
    }
}

TEST_CASE("FD-PLC data frame") {
    FdplcPhyParams p;
    CHECK(std::abs(fdplc_data_frame_time(p) - 10232.0) <= 0.5);
    p.fractional_symbols = false;
    CHECK(fdplc_data_frame_time(p) == doctest::Approx(10905.6));
    CHECK(fdplc_data_frame_time({720, 720, 819.2, 256, true}) == doctest::Approx(1075.2));
    CHECK_THROWS_AS(fdplc_data_frame_time({0, 720, 819.2, 256, true}), std::invalid_argument);
}

TEST_CASE("FD-PLC preamble") {
    CHECK(fdplc_preamble_time(5, 51.2) == doctest::Approx(256.0));
    CHECK(fdplc_preamble_time(1, 51.2) == doctest::Approx(51.2));
    CHECK(fdplc_preamble_time(10, 51.2) == doctest::Approx(512.0));
    CHECK_THROWS_AS(fdplc_preamble_time(0, 51.2), std::invalid_argument);
}

TEST_CASE("slot table covers the computed air-times") {
    const auto table = plcnet::default_timing_table();
    CHECK(fdplc_data_frame_time({}) <= static_cast<double>(table.data_frame_slot_us));
    CHECK(fdplc_preamble_time(kFdplcPreambleSymbols, kFdplcPreambleSymbolUs) <=
          static_cast<double>(table.preamble_slot_us));
}
