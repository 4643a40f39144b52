#pragma once

#include <cmath>
#include <cstddef>

namespace zfr {

// Neumaier-compensated accumulator.  The coefficient tables mix magnitudes
// from 1 down to 1e-26, so plain left-to-right summation is not acceptable
// for the c-constants.
class compensated_sum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <typename It, typename F>
double compensated_accumulate(It first, It last, F&& term) {
    compensated_sum acc;
    for (It it = first; it != last; ++it) acc.add(term(*it));
    return acc.value();
}

} // namespace zfr
