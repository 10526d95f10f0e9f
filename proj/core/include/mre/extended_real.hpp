#pragma once

#include <cmath>
#include <limits>

namespace mre {

/// Real number extended with +infinity. Relative entropy lands here: a
/// posterior weight outside the prior's support yields an infinite value,
/// which reports serialize as a distinguished token rather than a float.
class ExtendedReal {
public:
    constexpr ExtendedReal() : value_(0.0) {}
    constexpr ExtendedReal(double value) : value_(value) {}

    static constexpr ExtendedReal infinity() {
        return ExtendedReal(std::numeric_limits<double>::infinity());
    }

    bool is_finite() const { return std::isfinite(value_); }
    /// Underlying value; +inf when infinite.
    constexpr double value() const { return value_; }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.value_ == b.value_;
    }
    friend auto operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
        return a.value_ <=> b.value_;
    }

private:
    double value_;
};

} // namespace mre
