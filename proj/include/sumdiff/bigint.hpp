#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sumdiff {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a nonnegative big integer; -inf for zero.
inline double log_big(const BigInt& value) {
    if (value <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const std::size_t bits = boost::multiprecision::msb(value) + 1;
    if (bits <= 1000) {
        return std::log(value.convert_to<double>());
    }
    // keep 64 significant bits, account for the rest as a power of two
    const std::size_t shift = bits - 64;
    const BigInt head = value >> shift;
    return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline std::optional<std::uint64_t> to_u64(const BigInt& value) {
    if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
        return std::nullopt;
    }
    return value.convert_to<std::uint64_t>();
}

inline std::string to_string(const BigInt& value) { return value.str(); }

}  // namespace sumdiff
