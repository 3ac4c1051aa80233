#pragma once

// Data-frame counts of multi-layer network formation on an M-ary tree of
// depth K, for P-MAC and E-PMAC.
//
// Per-session counts follow first-order recurrences; network totals weight
// layer j by the M^(j-1) sessions it contains. Each total has a closed form
// (A K + B) M^K - B whose coefficients are non-integral, so closed forms are
// evaluated in exact rational arithmetic and checked against the recurrences.

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace plcnet::complexity {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct TreeShape {
    std::uint32_t m = 2;  // fan-out
    std::uint32_t k = 1;  // depth

    void validate() const;
};

/// Frames to let one PCO at layer `layer - 1` admit its M children.
std::int64_t pmac_session_frames(const TreeShape& shape, std::uint32_t layer);
std::int64_t epmac_session_frames(const TreeShape& shape, std::uint32_t layer);

struct Coefficients {
    Rational a;
    Rational b;
};

Coefficients pmac_coefficients(std::uint32_t m);
Coefficients epmac_coefficients(std::uint32_t m);

/// (a K + b) M^K - b.
Rational closed_form_total(const Coefficients& c, const TreeShape& shape);

struct TotalFrames {
    BigInt by_recurrence;
    Rational by_closed_form;

    bool agree() const { return Rational(by_recurrence) == by_closed_form; }
    /// The recurrence total; throws std::overflow_error if it does not fit.
    std::int64_t value() const;
};

TotalFrames pmac_total_frames(const TreeShape& shape);
TotalFrames epmac_total_frames(const TreeShape& shape);

struct DeltaSta {
    Rational exact;
    /// 3K - 1 - (5M - 2) / (M^2 - M): the large-M limit before the final rounding.
    Rational asymptotic;
    /// 3K - 1.
    std::int64_t approx = 0;

    double exact_value() const { return exact.convert_to<double>(); }
    double asymptotic_value() const { return asymptotic.convert_to<double>(); }
};

/// Frames saved per admitted station: (N - N') / (M (M^K - 1) / (M - 1)).
DeltaSta delta_sta(const TreeShape& shape);

/// T-Query and Net-Config frames for N stations in one layer: ceil(0.1 N) + ceil(0.05 N) + N.
std::int64_t epmac_single_layer_frames(std::int64_t n);

}  // namespace plcnet::complexity
