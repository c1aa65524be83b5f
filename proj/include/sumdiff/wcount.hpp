#pragma once

// Counting and enumeration of bounded simplex sets
//
//   W(m, L, B) = { x in N^m : x_1 + ... + x_m <= L, 0 <= x_i <= B }
//
// V(m, L) is the unbounded case W(m, L, L).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumdiff/bigint.hpp"

namespace sumdiff {

using LatticeVector = std::vector<std::int64_t>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Raised when an enumeration would produce more elements than allowed.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::uint64_t cap, const BigInt& count)
        : std::runtime_error("enumeration cap exceeded: " + count.str() + " elements requested, cap is " +
                             std::to_string(cap)),
          cap_(cap),
          count_(count) {}

    std::uint64_t cap() const noexcept { return cap_; }
    const BigInt& count() const noexcept { return count_; }

private:
    std::uint64_t cap_;
    BigInt count_;
};

struct WParams {
    std::int64_t m = 0;
    std::int64_t L = 0;
    std::int64_t B = 0;

    bool valid() const noexcept { return m >= 0 && L >= 0 && B >= 0; }

    void validate() const {
        if (!valid()) {
            throw std::invalid_argument("W(m, L, B) parameters must be nonnegative, got (" + std::to_string(m) + ", " +
                                        std::to_string(L) + ", " + std::to_string(B) + ")");
        }
    }

    /// min(L, m*B): the sum bound can never bind above the full cube.
    std::int64_t effective_L() const noexcept {
        if (B == 0 || m == 0) {
            return 0;
        }
        if (m > std::numeric_limits<std::int64_t>::max() / B) {
            return L;
        }
        return std::min(L, m * B);
    }

    friend bool operator==(const WParams&, const WParams&) = default;
};

struct CountValue {
    BigInt exact;
    double logValue = -std::numeric_limits<double>::infinity();

    static CountValue from_exact(BigInt value) {
        CountValue out;
        out.logValue = log_big(value);
        out.exact = std::move(value);
        return out;
    }
};

/// |W(m, L, B)| via a rolling DP over partial sums with prefix-sum windows, O(m * L_eff).
inline CountValue count_W(const WParams& p) {
    p.validate();
    const std::int64_t cap = p.effective_L();
    const auto width = static_cast<std::size_t>(cap) + 1;

    // row[s] = number of length-k vectors with coordinate sum exactly s
    std::vector<BigInt> row(width, BigInt(0));
    std::vector<BigInt> prefix(width + 1);
    row[0] = 1;
    for (std::int64_t k = 0; k < p.m; ++k) {
        prefix[0] = 0;
        for (std::size_t s = 0; s < width; ++s) {
            prefix[s + 1] = prefix[s] + row[s];
        }
        for (std::size_t s = 0; s < width; ++s) {
            const std::int64_t lo = static_cast<std::int64_t>(s) - p.B;
            row[s] = prefix[s + 1] - (lo > 0 ? prefix[static_cast<std::size_t>(lo)] : BigInt(0));
        }
    }
    BigInt total = 0;
    for (const auto& v : row) {
        total += v;
    }
    return CountValue::from_exact(std::move(total));
}

/// Exact C(m, k); zero when k > m.
inline CountValue binomial(std::int64_t m, std::int64_t k) {
    if (m < 0 || k < 0) {
        throw std::invalid_argument("binomial arguments must be nonnegative");
    }
    if (k > m) {
        return CountValue::from_exact(0);
    }
    k = std::min(k, m - k);
    BigInt result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        result *= (m - i);
        result /= (i + 1);
    }
    return CountValue::from_exact(std::move(result));
}

/// Members of W(m, L, B) in colexicographic order (x_1 varies fastest), which is
/// increasing order of the positional encodings in construct.hpp.
inline std::vector<LatticeVector> enumerate_W(const WParams& p, std::uint64_t cap = kDefaultEnumerationCap) {
    const CountValue n = count_W(p);
    if (n.exact > cap) {
        throw CapExceeded(cap, n.exact);
    }
    std::vector<LatticeVector> out;
    out.reserve(n.exact.convert_to<std::size_t>());

    const auto m = static_cast<std::size_t>(p.m);
    LatticeVector x(m, 0);
    std::int64_t sum = 0;
    while (true) {
        out.push_back(x);
        // odometer increment with carry; reset coordinates that overflow B or the sum bound
        std::size_t i = 0;
        for (; i < m; ++i) {
            if (x[i] < p.B && sum < p.L) {
                ++x[i];
                ++sum;
                break;
            }
            sum -= x[i];
            x[i] = 0;
        }
        if (i == m) {
            break;
        }
    }
    return out;
}

enum class CountBackend { Auto, Exact, LogDomain };

inline constexpr std::int64_t kExactBackendWorkLimit = 1'000'000;

namespace detail {

inline double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) {
        return b;
    }
    if (b == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

/// log |W(m, L, B)| by a DP carried entirely in the log domain.
inline double log_count_W_logdomain(const WParams& p) {
    p.validate();
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    const std::int64_t cap = p.effective_L();
    const auto width = static_cast<std::size_t>(cap) + 1;
    std::vector<double> row(width, neg_inf);
    std::vector<double> next(width, neg_inf);
    row[0] = 0.0;
    for (std::int64_t k = 0; k < p.m; ++k) {
        const auto reach = static_cast<std::size_t>(std::min<std::int64_t>(cap, (k + 1) * p.B));
        for (std::size_t s = 0; s < width; ++s) {
            if (s > reach) {
                next[s] = neg_inf;
                continue;
            }
            const std::size_t lo = s >= static_cast<std::size_t>(p.B) ? s - static_cast<std::size_t>(p.B) : 0;
            double hi = neg_inf;
            for (std::size_t j = lo; j <= s; ++j) {
                hi = std::max(hi, row[j]);
            }
            if (hi == neg_inf) {
                next[s] = neg_inf;
                continue;
            }
            double acc = 0.0;
            for (std::size_t j = lo; j <= s; ++j) {
                acc += std::exp(row[j] - hi);
            }
            next[s] = hi + std::log(acc);
        }
        std::swap(row, next);
    }
    double total = neg_inf;
    for (const double v : row) {
        total = log_add(total, v);
    }
    return total;
}

}  // namespace detail

/// log|W(m, floor(r m), B)| / m, the finite-m quantity whose limit is log(B+1) - I(r, B).
inline double log_count_rate(std::int64_t m, double r, std::int64_t B, CountBackend backend = CountBackend::Auto) {
    if (m < 1 || !(r > 0.0) || !std::isfinite(r) || B < 1) {
        throw std::invalid_argument("log_count_rate requires m >= 1, r > 0 finite, B >= 1");
    }
    const auto L = static_cast<std::int64_t>(std::floor(r * static_cast<double>(m)));
    const WParams p{m, L, B};
    if (backend == CountBackend::Auto) {
        const std::int64_t work = m * std::min<std::int64_t>(L, m * B);
        backend = work <= kExactBackendWorkLimit ? CountBackend::Exact : CountBackend::LogDomain;
    }
    const double logCount = backend == CountBackend::Exact ? count_W(p).logValue : detail::log_count_W_logdomain(p);
    return logCount / static_cast<double>(m);
}

}  // namespace sumdiff
