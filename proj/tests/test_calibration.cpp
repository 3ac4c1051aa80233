#include "doctest.h"

#include <random>

#include "plcnet/calibration.hpp"

using namespace plcnet;
using namespace plcnet::calibration;

namespace {

// Independent check: plug a candidate (T_P, R_P, R_M, 2 tau) into the four
// delay equations directly and report whether all hold for the measurement.
bool satisfies_delay_equations(Micros tp, Micros rp, Micros rm, Micros tau2, const CalibrationMeasurement& m) {
    return 2 * (rp + rm - tp) - tau2 == 0 &&       //
           2 * (rp + rm) + tau2 == 2 * m.tau_cco2 &&  //
           2 * (rp + rm + tp) + tau2 == 2 * m.tau_cco1 &&
           rm + tp == m.tau_sta;
}

}  // namespace

TEST_CASE("synthesized measurements") {
    CHECK(synthesize_measurements({10, 7, 5, 0}) == CalibrationMeasurement{24, 14, 15});
    CHECK(synthesize_measurements({0, 0, 0, 0}) == CalibrationMeasurement{0, 0, 0});
    CHECK(synthesize_measurements({5, 5, 0, 0}) == CalibrationMeasurement{10, 5, 5});

    CHECK(satisfies_delay_equations(10, 7, 5, 4, {24, 14, 15}));
    CHECK(satisfies_delay_equations(5, 5, 0, 0, {10, 5, 5}));
}

TEST_CASE("solve recovers the delay profile") {
    const auto r1 = solve_calibration({24, 14, 15});
    CHECK(r1 == CalibrationResult{10, 7, 5, 4});
    CHECK(r1.tau() == doctest::Approx(2.0));

    CHECK(solve_calibration({0, 0, 0}) == CalibrationResult{0, 0, 0, 0});

    const auto r3 = solve_calibration({10, 5, 5});
    CHECK(r3 == CalibrationResult{5, 5, 0, 0});
    CHECK(residual(r3, {10, 5, 5}).zero());
}

TEST_CASE("negative correction factor is allowed") {
    // Slow transmitter, fast receiver.
    const DelayProfile p{12, 4, 6, 0};
    const auto r = solve_calibration(synthesize_measurements(p));
    CHECK(r.profile() == p);
    CHECK(r.tau2 == -4);
    CHECK(synthesize_measurements(p).tau_cco2 >= 0);
}

TEST_CASE("inconsistent measurements are rejected") {
    CHECK_THROWS_AS(solve_calibration({5, 10, 3}), InconsistentMeasurement);  // cco1 < cco2
    CHECK_THROWS_AS(solve_calibration({24, 14, 5}), InconsistentMeasurement);  // R_M < 0
    CHECK_THROWS_AS(solve_calibration({24, 14, 100}), InconsistentMeasurement);  // R_P < 0
    CHECK_THROWS_AS(solve_calibration({25, 14, 15}), InconsistentMeasurement);  // half-microsecond R_P
}

TEST_CASE("calibrated time difference") {
    CHECK(calibrate_time_difference(100, 4) == 96);
    CHECK(calibrate_time_difference(50, 0) == 50);
    CHECK(calibrate_time_difference(10, -6) == 16);
    CHECK_THROWS_AS(calibrate_time_difference(3, 8), NegativeResult);

    const DelayProfile p{10, 7, 5, 0};
    const auto m = simulate_pte_measurement(p, 1000);
    const auto tau2 = solve_calibration(synthesize_measurements(p)).tau2;
    CHECK(calibrate_time_difference(m.delta_t_cco, tau2) == m.delta_t_sta);
}

TEST_CASE("PTE measurement pairs") {
    auto m = simulate_pte_measurement({10, 7, 5, 0}, 0);
    CHECK(m.delta_t_sta == 15);
    CHECK(m.delta_t_cco == 19);
    CHECK(m.delta_t_cco - 2 * 2 == 15);

    m = simulate_pte_measurement({0, 0, 0, 0}, 100);
    CHECK(m.delta_t_sta == 100);
    CHECK(m.delta_t_cco == 100);

    m = simulate_pte_measurement({5, 5, 0, 0}, 7);
    CHECK(m.delta_t_sta == 12);
    CHECK(m.delta_t_cco == 12);

    CHECK_THROWS_AS(simulate_pte_measurement({1, 1, 1, 0}, -1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_pte_measurement({1, 1, 1, 3}, 0), std::invalid_argument);
}

TEST_CASE("round trip and matching over random profiles") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<Micros> delay(0, 10000);
    std::uniform_int_distribution<Micros> backoff(0, 1'000'000);
    for (int i = 0; i < 5000; ++i) {
        const DelayProfile p{delay(rng), delay(rng), delay(rng), 0};
        const auto meas = synthesize_measurements(p);
        const auto r = solve_calibration(meas);
        REQUIRE(r.profile() == p);
        REQUIRE(r.tau2 == 2 * (p.r_p + p.r_m - p.t_p));
        REQUIRE(satisfies_delay_equations(r.t_p, r.r_p, r.r_m, r.tau2, meas));
        REQUIRE(residual(r, meas).zero());

        const auto pte = simulate_pte_measurement(p, backoff(rng));
        REQUIRE(calibrate_time_difference(pte.delta_t_cco, r.tau2) == pte.delta_t_sta);
    }
}
