#include "pdxprop/big_count.hpp"

#include <cmath>

namespace pdxprop {

double LogCount::value() const { return zero ? 0.0 : std::exp(log_value); }

LogCount to_log(const BigCount& x) {
    if (x == 0) return LogCount::zero_count();
    const unsigned bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 512) {
        return LogCount::from_log(std::log(x.convert_to<double>()));
    }
    // Keep the top 64 bits as the mantissa; the shifted-out bits contribute
    // shift * ln 2 exactly.
    const unsigned shift = bits - 64;
    const double mant = BigCount(x >> shift).convert_to<double>();
    return LogCount::from_log(std::log(mant) + static_cast<double>(shift) * M_LN2);
}

}  // namespace pdxprop
