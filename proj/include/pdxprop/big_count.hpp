#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pdxprop {

// Exact nonnegative integer of unbounded magnitude. All counting operations
// on BigCount are exact; LogCount is its log-space shadow for regimes where
// the counts no longer fit in floating point.
using BigCount = boost::multiprecision::cpp_int;

// Natural log of a positive count, with an explicit flag for count == 0
// (which has no logarithm).
struct LogCount {
    double log_value = 0.0;
    bool zero = false;

    static LogCount zero_count() { return LogCount{0.0, true}; }
    static LogCount from_log(double lv) { return LogCount{lv, false}; }

    // exp(log_value), or 0 for the zero count. Overflows to +inf for
    // counts beyond double range.
    double value() const;
};

// log(x) for an exact count, accurate to ~1 ulp of the mantissa even when
// x has thousands of bits. x must be positive; x == 0 yields the zero count.
LogCount to_log(const BigCount& x);

inline std::string to_decimal(const BigCount& x) { return x.str(); }

}  // namespace pdxprop
