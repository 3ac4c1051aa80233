#include "plcnet/complexity.hpp"

#include <limits>

namespace plcnet::complexity {

namespace {

void check_layer(const TreeShape& shape, std::uint32_t layer) {
    shape.validate();
    if (layer < 1 || layer > shape.k) throw std::invalid_argument("complexity: layer must lie in [1, K]");
}

BigInt power(std::uint32_t base, std::uint32_t exp) {
    BigInt out = 1;
    for (std::uint32_t i = 0; i < exp; ++i) out *= base;
    return out;
}

template <typename SessionFrames>
BigInt weighted_sum(const TreeShape& shape, SessionFrames session) {
    BigInt total = 0;
    BigInt sessions = 1;
    for (std::uint32_t j = 1; j <= shape.k; ++j) {
        total += BigInt(session(j)) * sessions;
        sessions *= shape.m;
    }
    return total;
}

}  // namespace

void TreeShape::validate() const {
    if (m < 2) throw std::invalid_argument("complexity: fan-out M must be at least 2");
    if (k < 1) throw std::invalid_argument("complexity: depth K must be at least 1");
}

std::int64_t pmac_session_frames(const TreeShape& shape, std::uint32_t layer) {
    check_layer(shape, layer);
    std::int64_t n = 3 * static_cast<std::int64_t>(shape.m);
    for (std::uint32_t j = 2; j <= layer; ++j) n += 3 * static_cast<std::int64_t>(shape.m) + 2;
    return n;
}

std::int64_t epmac_session_frames(const TreeShape& shape, std::uint32_t layer) {
    check_layer(shape, layer);
    std::int64_t n = static_cast<std::int64_t>(shape.m) + 2;
    for (std::uint32_t j = 2; j <= layer; ++j) n += 2;
    return n;
}

Coefficients pmac_coefficients(std::uint32_t m) {
    TreeShape{m, 1}.validate();
    const Rational mm(m);
    return {Rational(3) + Rational(5) / (mm - 1), Rational(-5) * mm / ((mm - 1) * (mm - 1))};
}

Coefficients epmac_coefficients(std::uint32_t m) {
    TreeShape{m, 1}.validate();
    const Rational mm(m);
    return {Rational(2) / (mm - 1), Rational(1) + (mm - 3) / ((mm - 1) * (mm - 1))};
}

Rational closed_form_total(const Coefficients& c, const TreeShape& shape) {
    shape.validate();
    return (c.a * shape.k + c.b) * Rational(power(shape.m, shape.k)) - c.b;
}

std::int64_t TotalFrames::value() const {
    if (by_recurrence > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("frame total exceeds 64 bits");
    return by_recurrence.convert_to<std::int64_t>();
}

TotalFrames pmac_total_frames(const TreeShape& shape) {
    return {weighted_sum(shape, [&](std::uint32_t j) { return pmac_session_frames(shape, j); }),
            closed_form_total(pmac_coefficients(shape.m), shape)};
}

TotalFrames epmac_total_frames(const TreeShape& shape) {
    return {weighted_sum(shape, [&](std::uint32_t j) { return epmac_session_frames(shape, j); }),
            closed_form_total(epmac_coefficients(shape.m), shape)};
}

DeltaSta delta_sta(const TreeShape& shape) {
    shape.validate();
    const Rational m(shape.m);
    // Stations in the tree: M + M^2 + ... + M^K.
    const Rational stations = m * (Rational(power(shape.m, shape.k)) - 1) / (m - 1);
    const Rational saved(pmac_total_frames(shape).by_recurrence - epmac_total_frames(shape).by_recurrence);

    DeltaSta out;
    out.exact = saved / stations;
    out.approx = 3 * static_cast<std::int64_t>(shape.k) - 1;
    out.asymptotic = Rational(out.approx) - (m * 5 - 2) / (m * m - m);
    return out;
}

std::int64_t epmac_single_layer_frames(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("complexity: station count must be positive");
    // ceil(0.1 n) and ceil(0.05 n) in integers.
    return (n + 9) / 10 + (n + 19) / 20 + n;
}

}  // namespace plcnet::complexity
