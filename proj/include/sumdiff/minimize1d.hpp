#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sumdiff {

struct ScalarOptimum {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
    int iterations = 0;
};

/**
 * Brent's derivative-free minimizer on [lo, hi]: golden-section steps with
 * parabolic interpolation when the fit is trustworthy.
 *
 * Stops once the bracket around the best point has width at most
 * tol + 4 * machine_eps * |x|. The returned point is the best one evaluated.
 */
template <class F>
ScalarOptimum brent_minimize(F&& f, double lo, double hi, double tol, int maxIterations = 1000) {
    if (!(lo < hi)) {
        throw std::invalid_argument("brent_minimize: empty interval");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("brent_minimize: tol must be positive");
    }
    const double golden = 0.5 * (3.0 - std::sqrt(5.0));
    constexpr double machEps = std::numeric_limits<double>::epsilon();

    double a = lo;
    double b = hi;
    double x = a + golden * (b - a);
    double w = x;
    double v = x;
    double fx = f(x);
    double fw = fx;
    double fv = fx;
    double d = 0.0;
    double e = 0.0;

    ScalarOptimum out;
    out.evaluations = 1;
    for (; out.iterations < maxIterations; ++out.iterations) {
        const double mid = 0.5 * (a + b);
        const double tol1 = 0.25 * tol + machEps * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
            break;
        }

        double p = 0.0;
        double q = 0.0;
        double r = 0.0;
        if (std::abs(e) > tol1) {
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                p = -p;
            }
            q = std::abs(q);
            r = e;
            e = d;
        }
        if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
            d = p / q;
            const double u = x + d;
            if (u - a < tol2 || b - u < tol2) {
                d = x < mid ? tol1 : -tol1;
            }
        } else {
            e = (x < mid ? b : a) - x;
            d = golden * e;
        }

        const double u = x + (std::abs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
        const double fu = f(u);
        ++out.evaluations;

        if (fu <= fx) {
            if (u < x) {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    out.x = x;
    out.value = fx;
    return out;
}

template <class F>
ScalarOptimum brent_maximize(F&& f, double lo, double hi, double tol, int maxIterations = 1000) {
    auto result = brent_minimize([&f](double t) { return -f(t); }, lo, hi, tol, maxIterations);
    result.value = -result.value;
    return result;
}

}  // namespace sumdiff
