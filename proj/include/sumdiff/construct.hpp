#pragma once

// Integer sets built from W(m, L, B) by carry-free positional encodings, their
// sumsets and difference sets, and the theta lower bound
//
//   theta >= 1 + (log|U - U| - log|U + U|) / log(2 max U + 1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumdiff/bigint.hpp"
#include "sumdiff/wcount.hpp"

namespace sumdiff {

/// Strictly increasing sequence of integers.
class IntegerSet {
public:
    IntegerSet() = default;

    /// Sorts and deduplicates.
    explicit IntegerSet(std::vector<BigInt> values) : elements_(std::move(values)) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    }

    const std::vector<BigInt>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    const BigInt& min() const { return elements_.front(); }
    const BigInt& max() const { return elements_.back(); }

    bool contains(const BigInt& v) const { return std::binary_search(elements_.begin(), elements_.end(), v); }

    friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

private:
    std::vector<BigInt> elements_;
};

struct BoundReport {
    CountValue d;  // |U - U|
    CountValue s;  // |U + U|
    BigInt q;      // 2 max(U) + 1
    double theta = 0.0;
};

namespace detail {

inline BigInt positional_value(std::span<const std::int64_t> digits, std::span<const BigInt> weights) {
    BigInt value = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        value += weights[k] * digits[k];
    }
    return value;
}

}  // namespace detail

/// Weights (2B+1)^k, k = 0..m-1.
inline std::vector<BigInt> g_weights(std::size_t m, std::int64_t B) {
    std::vector<BigInt> w(m);
    BigInt p = 1;
    for (std::size_t k = 0; k < m; ++k) {
        w[k] = p;
        p *= (2 * B + 1);
    }
    return w;
}

/// Weights L_0 = 1, L_k = 2L * L_{k-1} + 1.
inline std::vector<BigInt> f_weights(std::size_t m, std::int64_t L) {
    std::vector<BigInt> w(m);
    BigInt p = 1;
    for (std::size_t k = 0; k < m; ++k) {
        w[k] = p;
        p = 2 * L * p + 1;
    }
    return w;
}

/// x_1 + x_2 (2B+1) + ... + x_m (2B+1)^{m-1}. Digits must lie in [-2B, 2B].
inline BigInt encode_g(std::span<const std::int64_t> x, std::int64_t B) {
    if (B < 1) {
        throw std::invalid_argument("encode_g requires B >= 1");
    }
    for (const auto xi : x) {
        if (xi < -2 * B || xi > 2 * B) {
            throw std::out_of_range("encode_g: coordinate " + std::to_string(xi) + " outside [-2B, 2B] for B = " +
                                    std::to_string(B));
        }
    }
    return detail::positional_value(x, g_weights(x.size(), B));
}

/// x_1 L_0 + x_2 L_1 + ... + x_m L_{m-1}. Digits must lie in [0, L].
inline BigInt encode_f(std::span<const std::int64_t> x, std::int64_t L) {
    if (L < 1) {
        throw std::invalid_argument("encode_f requires L >= 1");
    }
    for (const auto xi : x) {
        if (xi < 0 || xi > L) {
            throw std::out_of_range("encode_f: coordinate " + std::to_string(xi) + " outside [0, L] for L = " +
                                    std::to_string(L));
        }
    }
    return detail::positional_value(x, f_weights(x.size(), L));
}

/// U = g(W(m, L, B)).
inline IntegerSet build_U(const WParams& p, std::uint64_t cap = kDefaultEnumerationCap) {
    if (p.B < 1) {
        throw std::invalid_argument("build_U requires B >= 1");
    }
    const auto members = enumerate_W(p, cap);
    const auto weights = g_weights(static_cast<std::size_t>(p.m), p.B);
    std::vector<BigInt> values;
    values.reserve(members.size());
    for (const auto& x : members) {
        values.push_back(detail::positional_value(x, weights));
    }
    return IntegerSet(std::move(values));
}

inline IntegerSet sumset(const IntegerSet& U) {
    const auto& e = U.elements();
    std::vector<BigInt> out;
    out.reserve(e.size() * (e.size() + 1) / 2);
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i; j < e.size(); ++j) {
            out.push_back(e[i] + e[j]);
        }
    }
    return IntegerSet(std::move(out));
}

inline IntegerSet diffset(const IntegerSet& U) {
    const auto& e = U.elements();
    std::vector<BigInt> out;
    out.reserve(e.size() * e.size());
    for (const auto& u : e) {
        for (const auto& v : e) {
            out.push_back(u - v);
        }
    }
    return IntegerSet(std::move(out));
}

inline BoundReport theta_bound_exact(const IntegerSet& U) {
    if (U.empty() || !U.contains(0) || U.min() < 0) {
        throw std::invalid_argument("theta_bound_exact requires a nonempty set of nonnegative integers containing 0");
    }
    if (U.max() < 1) {
        throw std::invalid_argument("theta_bound_exact: U = {0} gives log q = 0");
    }
    BoundReport out;
    out.d = CountValue::from_exact(diffset(U).size());
    out.s = CountValue::from_exact(sumset(U).size());
    out.q = 2 * U.max() + 1;
    out.theta = 1.0 + (out.d.logValue - out.s.logValue) / log_big(out.q);
    return out;
}

/// The convolution formula for |U - U|:
///   sum_{k=0}^{min(m,L)} C(m,k) |W(k, L-k, B-1)| |W(m-k, L, B)|.
inline BigInt diffset_count_formula(const WParams& p) {
    p.validate();
    if (p.B < 1) {
        throw std::invalid_argument("diffset_count_formula requires B >= 1");
    }
    BigInt total = 0;
    for (std::int64_t k = 0; k <= std::min(p.m, p.L); ++k) {
        total += binomial(p.m, k).exact * count_W({k, p.L - k, p.B - 1}).exact * count_W({p.m - k, p.L, p.B}).exact;
    }
    return total;
}

/// |U + U| == |W(m, 2L, 2B)|.
inline bool verify_sumset_identity(const WParams& p, std::uint64_t cap = kDefaultEnumerationCap) {
    p.validate();
    if (p.B == 0) {
        // g is undefined for B = 0; W(m, L, 0) = {0} on both sides
        return count_W({p.m, 2 * p.L, 0}).exact == 1;
    }
    const auto U = build_U(p, cap);
    return BigInt(sumset(U).size()) == count_W({p.m, 2 * p.L, 2 * p.B}).exact;
}

inline bool verify_diffset_identity(const WParams& p, std::uint64_t cap = kDefaultEnumerationCap) {
    const auto U = build_U(p, cap);
    return BigInt(diffset(U).size()) == diffset_count_formula(p);
}

namespace detail {

/// True iff the linear map with the given weights separates the distinct
/// vectors of {x + y} and of {x - y} over x, y in `members`.
inline bool linear_map_injective_on_sums_and_differences(const std::vector<LatticeVector>& members,
                                                         std::span<const BigInt> weights) {
    std::vector<BigInt> images;
    images.reserve(members.size());
    for (const auto& x : members) {
        images.push_back(positional_value(x, weights));
    }
    for (const int sign : {+1, -1}) {
        std::set<LatticeVector> vectors;
        std::vector<BigInt> values;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = 0; j < members.size(); ++j) {
                LatticeVector v(members[i].size());
                for (std::size_t c = 0; c < v.size(); ++c) {
                    v[c] = members[i][c] + sign * members[j][c];
                }
                vectors.insert(std::move(v));
                values.push_back(sign > 0 ? BigInt(images[i] + images[j]) : BigInt(images[i] - images[j]));
            }
        }
        if (IntegerSet(std::move(values)).size() != vectors.size()) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// g is injective on W + W and on W - W.
inline bool verify_injectivity(const WParams& p, std::uint64_t cap = kDefaultEnumerationCap) {
    if (p.B < 1) {
        throw std::invalid_argument("verify_injectivity requires B >= 1");
    }
    const auto members = enumerate_W(p, cap);
    return detail::linear_map_injective_on_sums_and_differences(members,
                                                                g_weights(static_cast<std::size_t>(p.m), p.B));
}

/// f is injective on V(m, L) + V(m, L) and on V(m, L) - V(m, L).
inline bool verify_injectivity_f(std::int64_t m, std::int64_t L, std::uint64_t cap = kDefaultEnumerationCap) {
    if (m < 0 || L < 1) {
        throw std::invalid_argument("verify_injectivity_f requires m >= 0, L >= 1");
    }
    const auto members = enumerate_W({m, L, L}, cap);
    return detail::linear_map_injective_on_sums_and_differences(members, f_weights(static_cast<std::size_t>(m), L));
}

}  // namespace sumdiff
