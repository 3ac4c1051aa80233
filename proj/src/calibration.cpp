#include "plcnet/calibration.hpp"

#include <string>

namespace plcnet::calibration {

void DelayProfile::validate() const {
    if (t_p < 0 || r_p < 0 || r_m < 0) throw std::invalid_argument("delay profile: delays must be non-negative");
    if (t_c != 0) throw std::invalid_argument("delay profile: propagation delay is not modeled and must be 0");
}

Residual residual(const CalibrationResult& r, const CalibrationMeasurement& m) {
    const Micros rp2 = 2 * r.r_p, rm2 = 2 * r.r_m, tp2 = 2 * r.t_p;
    return {
        rp2 + rm2 - tp2 - r.tau2,
        rp2 + rm2 + r.tau2 - 2 * m.tau_cco2,
        rp2 + rm2 + tp2 + r.tau2 - 2 * m.tau_cco1,
        rm2 + tp2 - 2 * m.tau_sta,
    };
}

CalibrationMeasurement synthesize_measurements(const DelayProfile& p) {
    p.validate();
    const Micros round_trip = 2 * (p.r_p + p.r_m);
    return {round_trip, round_trip - p.t_p, p.r_m + p.t_p};
}

CalibrationResult solve_calibration(const CalibrationMeasurement& m) {
    if (m.tau_cco1 < m.tau_cco2) throw InconsistentMeasurement("tau_cco1 must not be smaller than tau_cco2");
    CalibrationResult r;
    r.t_p = m.tau_cco1 - m.tau_cco2;
    r.tau2 = 2 * m.tau_cco2 - m.tau_cco1;
    r.r_m = m.tau_sta - r.t_p;
    const Micros rp2 = 2 * r.t_p + r.tau2 - 2 * r.r_m;
    if (rp2 % 2 != 0) throw InconsistentMeasurement("recovered receive delay is not a whole microsecond");
    r.r_p = rp2 / 2;
    if (r.r_m < 0 || r.r_p < 0) {
        throw InconsistentMeasurement("measurements imply a negative delay (t_p=" + std::to_string(r.t_p) +
                                      ", r_p=" + std::to_string(r.r_p) + ", r_m=" + std::to_string(r.r_m) + ")");
    }
    return r;
}

Micros calibrate_time_difference(Micros delta_t_cco, Micros tau2) {
    const Micros out = delta_t_cco - tau2;
    if (out < 0) throw NegativeResult("calibrated time difference would be negative");
    return out;
}

PteMeasurement simulate_pte_measurement(const DelayProfile& p, Micros backoff_us) {
    p.validate();
    if (backoff_us < 0) throw std::invalid_argument("backoff must be non-negative");
    const Micros sta = backoff_us + p.r_m + p.t_p;
    return {sta + tau2_of(p), sta};
}

}  // namespace plcnet::calibration
