#pragma once

// Large-deviation rate function for the uniform distribution on {0, ..., B}:
//
//   I(c, B) = 0                                            for c >= B/2
//   I(c, B) = sup_t ( t c - log((1 + e^t + ... + e^{Bt}) / (B+1)) )   for c < B/2
//
// so that log|W(m, floor(r m), B)| / m -> log(B+1) - I(r, B).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace sumdiff {

inline constexpr double kDefaultRateTol = 1e-12;

struct RateQuery {
    double c = 0.0;
    std::int64_t B = 1;
};

struct RateResult {
    double value = 0.0;
    /// Optimal tilt. -inf when c == 0 (supremum approached as t -> -inf),
    /// nullopt on the zero branch c >= B/2.
    std::optional<double> tStar;
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {

/// Shift used to keep every exponent e^{jt - shift} <= 1.
inline double mgf_shift(double t, std::int64_t B) { return std::max(0.0, static_cast<double>(B) * t); }

}  // namespace detail

/// log( (1 + e^t + ... + e^{Bt}) / (B+1) ).
inline double log_mgf(double t, std::int64_t B) {
    if (B < 0) {
        throw std::invalid_argument("log_mgf requires B >= 0");
    }
    const double shift = detail::mgf_shift(t, B);
    double sum = 0.0;
    for (std::int64_t j = 0; j <= B; ++j) {
        sum += std::exp(static_cast<double>(j) * t - shift);
    }
    return shift + std::log(sum) - std::log(static_cast<double>(B + 1));
}

/// Mean of the exponentially tilted distribution; the derivative of log_mgf.
inline double tilted_mean(double t, std::int64_t B) {
    if (B < 0) {
        throw std::invalid_argument("tilted_mean requires B >= 0");
    }
    const double shift = detail::mgf_shift(t, B);
    double weight = 0.0;
    double moment = 0.0;
    for (std::int64_t j = 0; j <= B; ++j) {
        const double w = std::exp(static_cast<double>(j) * t - shift);
        weight += w;
        moment += static_cast<double>(j) * w;
    }
    return moment / weight;
}

/// I(c, B) by bisection on the stationarity condition tilted_mean(t, B) = c over t <= 0.
/// B = 0 is accepted: the distribution is a point mass at 0 and every c >= 0 is on the zero branch.
inline RateResult rate_I(const RateQuery& query, double tol = kDefaultRateTol) {
    const double c = query.c;
    const std::int64_t B = query.B;
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("rate_I requires finite c >= 0, got " + std::to_string(c));
    }
    if (B < 0) {
        throw std::invalid_argument("rate_I requires B >= 0");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("rate_I requires tol > 0");
    }

    RateResult out;
    const double half = 0.5 * static_cast<double>(B);
    if (c >= half) {
        return out;
    }
    const double logSupport = std::log(static_cast<double>(B + 1));
    if (c == 0.0) {
        out.value = logSupport;
        out.tStar = -std::numeric_limits<double>::infinity();
        return out;
    }

    double hi = 0.0;
    double lo = -2.0 * logSupport / std::max(c, 0.01);
    while (tilted_mean(lo, B) >= c) {
        hi = lo;
        lo *= 2.0;
        ++out.iterations;
    }

    double t = 0.5 * (lo + hi);
    double residual = tilted_mean(t, B) - c;
    while (std::abs(residual) > tol) {
        if (residual < 0.0) {
            lo = t;
        } else {
            hi = t;
        }
        const double mid = 0.5 * (lo + hi);
        ++out.iterations;
        if (mid == lo || mid == hi) {
            break;  // bracket exhausted at double resolution
        }
        t = mid;
        residual = tilted_mean(t, B) - c;
    }

    out.tStar = t;
    out.residual = residual;
    out.value = std::max(0.0, t * c - log_mgf(t, B));
    return out;
}

inline double rate_value(double c, std::int64_t B, double tol = kDefaultRateTol) { return rate_I({c, B}, tol).value; }

/// log(B+1) - I(c, B), the limiting exponential growth rate of |W(m, floor(c m), B)|.
inline double log_W_rate_limit(const RateQuery& query, double tol = kDefaultRateTol) {
    return std::log(static_cast<double>(query.B + 1)) - rate_I(query, tol).value;
}

}  // namespace sumdiff
