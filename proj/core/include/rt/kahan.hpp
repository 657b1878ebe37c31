#pragma once

namespace rt {

/// Kahan compensated accumulator. The selector statistics are maxima of
/// centered prefix sums over as many as ~1e5 terms spanning several orders
/// of magnitude; plain summation drifts enough to move the argmin.
struct KahanSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        const double y = value - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }

    KahanSum& operator+=(double value) {
        add(value);
        return *this;
    }

    operator double() const { return sum; }
};

}  // namespace rt
