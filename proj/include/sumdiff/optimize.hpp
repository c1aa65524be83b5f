#pragma once

// The theta objective for U = g(W(m, floor(r m), B)) with the difference set
// lower-bounded through k = floor(a L), and its nested maximization
// a -> r -> B.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumdiff/minimize1d.hpp"
#include "sumdiff/ratefn.hpp"

namespace sumdiff {

inline constexpr double kRMin = 0.5;
inline constexpr double kRMax = 2.0;

/// The additive pieces of the objective's numerator, with their signs left out.
struct NumeratorTerms {
    double log2Term = 0.0;           // log 2
    double arLogB = 0.0;             // ar log B
    double oneMinusArLogB1 = 0.0;    // (1 - ar) log(B + 1)
    double I_ar_1 = 0.0;             // I(ar, 1)
    double ar_I_inner = 0.0;         // ar I((1 - a)/a, B - 1)
    double oneMinusAr_I_outer = 0.0; // (1 - ar) I(r/(1 - ar), B)
    double I_2r_2B = 0.0;            // I(2r, 2B)

    /// Lower bound on the growth rate of log|U - U| / m.
    double log_d_rate() const {
        return log2Term + arLogB + oneMinusArLogB1 - I_ar_1 - ar_I_inner - oneMinusAr_I_outer;
    }
};

struct ThetaPoint {
    std::int64_t B = 1;
    double r = 1.0;
    double a = 0.5;
    NumeratorTerms numeratorTerms;
    double thetaMinus1 = 0.0;

    double log_q_rate() const { return std::log(static_cast<double>(2 * B + 1)); }

    /// thetaMinus1 recomputed from the stored terms.
    double recompute() const {
        const auto& t = numeratorTerms;
        return (t.log_d_rate() - log_q_rate() + t.I_2r_2B) / log_q_rate();
    }
};

inline double a_upper(double r) { return std::min(1.0, 1.0 / r); }

namespace detail {

inline void check_objective_args(std::int64_t B, double r, double a) {
    if (B < 1) {
        throw std::invalid_argument("theta objective requires B >= 1");
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("theta objective requires finite r > 0");
    }
    if (!(a > 0.0) || !(a < a_upper(r))) {
        throw std::invalid_argument("theta objective requires 0 < a < min(1, 1/r), got a = " + std::to_string(a));
    }
}

inline NumeratorTerms d_terms(std::int64_t B, double r, double a, double tol) {
    const double ar = a * r;
    NumeratorTerms t;
    t.log2Term = std::log(2.0);
    t.arLogB = ar * std::log(static_cast<double>(B));
    t.oneMinusArLogB1 = (1.0 - ar) * std::log(static_cast<double>(B + 1));
    t.I_ar_1 = rate_value(ar, 1, tol);
    t.ar_I_inner = ar * rate_value((1.0 - a) / a, B - 1, tol);
    t.oneMinusAr_I_outer = (1.0 - ar) * rate_value(r / (1.0 - ar), B, tol);
    return t;
}

}  // namespace detail

inline ThetaPoint theta_objective(std::int64_t B, double r, double a, double tol = kDefaultRateTol) {
    detail::check_objective_args(B, r, a);
    ThetaPoint point;
    point.B = B;
    point.r = r;
    point.a = a;
    point.numeratorTerms = detail::d_terms(B, r, a, tol);
    point.numeratorTerms.I_2r_2B = rate_value(2.0 * r, 2 * B, tol);
    point.thetaMinus1 = point.recompute();
    if (!std::isfinite(point.thetaMinus1)) {
        throw std::domain_error("theta objective is not finite at B = " + std::to_string(B) +
                                ", r = " + std::to_string(r) + ", a = " + std::to_string(a));
    }
    return point;
}

struct AOptimum {
    double aStar = 0.0;
    double value = 0.0;  // thetaMinus1 at aStar
    int evaluations = 0;
    bool boundaryHit = false;
};

/// max over a in (0, min(1, 1/r)) with the endpoints inset by max(eps, 1e-12).
inline AOptimum maximize_a(std::int64_t B, double r, double eps, double rateTol = kDefaultRateTol) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("maximize_a requires eps > 0");
    }
    const double inset = std::max(eps, 1e-12);
    const double lo = inset;
    const double hi = a_upper(r) - inset;
    const auto best = brent_maximize(
        [&](double a) { return detail::d_terms(B, r, a, rateTol).log_d_rate(); }, lo, hi, eps);

    AOptimum out;
    out.aStar = best.x;
    out.value = theta_objective(B, r, best.x, rateTol).thetaMinus1;
    out.evaluations = best.evaluations;
    const double slack = 10.0 * eps;
    out.boundaryHit = best.x - lo <= slack || hi - best.x <= slack;
    return out;
}

struct OptimizationReport {
    std::int64_t B = 1;
    double epsilon = 0.0;
    double rStar = 0.0;
    double aStar = 0.0;
    double thetaMinus1 = 0.0;
    int evaluations = 0;  // outer objective evaluations
    bool boundaryHit = false;
};

/// max over r in [0.5, 2] of maximize_a(B, r, eps).
inline OptimizationReport maximize_r(std::int64_t B, double eps, double rateTol = kDefaultRateTol) {
    if (B < 1) {
        throw std::invalid_argument("maximize_r requires B >= 1");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("maximize_r requires eps > 0");
    }
    const auto best =
        brent_maximize([&](double r) { return maximize_a(B, r, eps, rateTol).value; }, kRMin, kRMax, eps);
    const auto inner = maximize_a(B, best.x, eps, rateTol);

    OptimizationReport report;
    report.B = B;
    report.epsilon = eps;
    report.rStar = best.x;
    report.aStar = inner.aStar;
    report.thetaMinus1 = inner.value;
    report.evaluations = best.evaluations;
    const double slack = 10.0 * eps;
    report.boundaryHit = inner.boundaryHit || best.x - kRMin <= slack || kRMax - best.x <= slack;
    return report;
}

/// Row-major grid of reports: one row per B in [bLo, bHi], one column per eps.
struct Table1 {
    std::vector<std::int64_t> Bs;
    std::vector<double> epsList;
    std::vector<OptimizationReport> cells;

    const OptimizationReport& at(std::size_t row, std::size_t col) const { return cells.at(row * epsList.size() + col); }

    /// The cell with the largest thetaMinus1; ties go to the first in row-major order.
    const OptimizationReport& best() const {
        return *std::max_element(cells.begin(), cells.end(),
                                 [](const auto& x, const auto& y) { return x.thetaMinus1 < y.thetaMinus1; });
    }
};

inline Table1 table1(const std::vector<double>& epsList, std::int64_t bLo = 3, std::int64_t bHi = 10,
                     bool parallel = true) {
    if (epsList.empty()) {
        throw std::invalid_argument("table1 requires at least one tolerance");
    }
    if (bLo < 1 || bHi < bLo) {
        throw std::invalid_argument("table1 requires 1 <= bLo <= bHi");
    }
    Table1 table;
    table.epsList = epsList;
    for (auto B = bLo; B <= bHi; ++B) {
        table.Bs.push_back(B);
    }

    std::vector<std::future<OptimizationReport>> pending;
    for (const auto B : table.Bs) {
        for (const double eps : epsList) {
            pending.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                                         [B, eps] { return maximize_r(B, eps); }));
        }
    }
    table.cells.reserve(pending.size());
    for (auto& f : pending) {
        table.cells.push_back(f.get());
    }
    return table;
}

}  // namespace sumdiff
