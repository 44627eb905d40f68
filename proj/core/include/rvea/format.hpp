#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace rvea {

/// Shortest "%.*g"-style rendering with `digits` significant digits; always
/// uses '.' as decimal separator regardless of the global locale.
/// Non-finite values render as "nan", "inf" and "-inf".
inline std::string format_general(double value, int digits = 10) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
    return std::string(buf, result.ptr);
}

/// `value` rounded to `digits` significant decimal digits.
inline double round_significant(double value, int digits = 10) {
    if (!std::isfinite(value)) return value;
    const auto text = format_general(value, digits);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

} // namespace rvea
