#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zfr {

struct DigammaResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

// Real digamma via upward recurrence psi(x+1) = psi(x) + 1/x until the
// argument reaches 10, then the asymptotic series
//   psi(x) ~ ln x - 1/(2x) - sum_{n>=1} B_{2n} / (2n x^{2n})
// truncated after the B_14 term.  At x >= 10 the first omitted term
// (B_16/(16 x^16) ~ 4.4e-17) is far below the 1e-12 contract; the error
// estimate below is dominated by accumulated rounding in the recurrence.
inline DigammaResult digamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("digamma requires finite x > 0");

    double shift = 0.0;
    int steps = 0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
        ++steps;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli numbers B_2..B_14: 1/6, -1/30, 1/42, -1/30, 5/66, -691/2730, 7/6.
    const double series =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 -
        inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
    const double value = shift + std::log(x) - 0.5 * inv - series;

    const double truncation = 7.0921 / (16.0 * std::pow(x, 16));  // |B_16|/(16 x^16)
    const double magnitude = std::max({1.0, std::abs(shift), std::abs(value)});
    const double rounding = (steps + 2) * std::numeric_limits<double>::epsilon() * magnitude;
    return {value, truncation + rounding};
}

} // namespace zfr
