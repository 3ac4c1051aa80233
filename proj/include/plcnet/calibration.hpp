#pragma once

// Hardware delay calibration for preamble time-difference measurement.
//
// With constant coding/transmit delay T_P, receive/decode delay R_P and
// PHY->MAC transfer delay R_M (propagation T_C ignored), the CCO measures
// two intervals tau_cco1, tau_cco2 against an STA with zero backoff, the STA
// reports tau_sta, and the system
//
//     R_P + R_M - T_P - tau = 0
//     R_P + R_M       + tau = tau_cco2
//     R_P + R_M + T_P + tau = tau_cco1
//           R_M + T_P       = tau_sta
//
// has a unique solution. The CCO then publishes dT_cco - 2 tau so each STA
// sees the same difference it measured locally.
//
// tau is half-integral in general, so it is carried as tau2 = 2 * tau to keep
// every equality exact in integer microseconds.

#include <stdexcept>

#include "plcnet/core.hpp"

namespace plcnet::calibration {

class InconsistentMeasurement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NegativeResult : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DelayProfile {
    Micros t_p = 0;
    Micros r_p = 0;
    Micros r_m = 0;
    Micros t_c = 0;

    void validate() const;
    friend bool operator==(const DelayProfile&, const DelayProfile&) = default;
};

struct CalibrationMeasurement {
    Micros tau_cco1 = 0;
    Micros tau_cco2 = 0;
    Micros tau_sta = 0;

    friend bool operator==(const CalibrationMeasurement&, const CalibrationMeasurement&) = default;
};

struct CalibrationResult {
    Micros t_p = 0;
    Micros r_p = 0;
    Micros r_m = 0;
    /// Twice the correction factor; may be negative.
    Micros tau2 = 0;

    double tau() const { return static_cast<double>(tau2) / 2.0; }
    DelayProfile profile() const { return {t_p, r_p, r_m, 0}; }

    friend bool operator==(const CalibrationResult&, const CalibrationResult&) = default;
};

/// Left-hand sides minus right-hand sides of the four delay equations, each doubled.
struct Residual {
    Micros eq1 = 0, eq2 = 0, eq3 = 0, eq4 = 0;
    bool zero() const { return eq1 == 0 && eq2 == 0 && eq3 == 0 && eq4 == 0; }
};

Residual residual(const CalibrationResult& result, const CalibrationMeasurement& meas);

/// Intervals observed when the STA answers with zero random backoff.
CalibrationMeasurement synthesize_measurements(const DelayProfile& profile);

CalibrationResult solve_calibration(const CalibrationMeasurement& meas);

/// Twice the correction factor implied by a delay profile.
inline Micros tau2_of(const DelayProfile& p) { return 2 * (p.r_p + p.r_m - p.t_p); }

Micros calibrate_time_difference(Micros delta_t_cco, Micros tau2);

struct PteMeasurement {
    Micros delta_t_cco = 0;
    Micros delta_t_sta = 0;
};

/// Time difference seen at the CCO and at the STA for one PTE response with
/// the given backoff.
PteMeasurement simulate_pte_measurement(const DelayProfile& profile, Micros backoff_us);

}  // namespace plcnet::calibration
