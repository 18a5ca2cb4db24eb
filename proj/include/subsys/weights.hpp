#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Weight distributions as exact big-integer histograms, the MacWilliams
// transform between a code's distribution and its dual's, and the tagged
// distance value used throughout: a distance is either known exactly or is a
// certified lower bound (never an estimate).

namespace subsys {

using bigint = boost::multiprecision::cpp_int;
using WeightDist = std::vector<bigint>; // index = weight, size n+1

struct Distance {
    enum class Kind { exact, lower_bound };
    Kind kind = Kind::lower_bound;
    long long value = 1;

    static Distance exact(long long v) { return {Kind::exact, v}; }
    static Distance at_least(long long v) { return {Kind::lower_bound, v}; }
    bool is_exact() const { return kind == Kind::exact; }
    std::string str() const { return (is_exact() ? "" : ">=") + std::to_string(value); }

    bool operator==(const Distance& o) const { return kind == o.kind && value == o.value; }
};

inline WeightDist widen(const std::vector<std::uint64_t>& h) {
    WeightDist w(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) w[i] = h[i];
    return w;
}

inline bigint dist_total(const WeightDist& w) {
    bigint s = 0;
    for (const auto& x : w) s += x;
    return s;
}

// Smallest positive weight with a nonzero count; nullopt if none (code = {0}).
inline std::optional<int> min_positive_weight(const WeightDist& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] > 0) return int(i);
    return std::nullopt;
}

namespace detail {

inline bigint binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    bigint r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// Krawtchouk polynomial K_j(i; n, q) = sum_s (-1)^s (q-1)^(j-s) C(i,s) C(n-i, j-s)
inline bigint krawtchouk(int j, int i, int n, std::uint32_t q) {
    bigint acc = 0;
    for (int s = 0; s <= j; ++s) {
        bigint term = binomial(i, s) * binomial(n - i, j - s);
        if (term == 0) continue;
        bigint pw = 1;
        for (int t = 0; t < j - s; ++t) pw *= (q - 1);
        term *= pw;
        if (s & 1) acc -= term;
        else acc += term;
    }
    return acc;
}

} // namespace detail

// Weight distribution of the dual code from the code's own distribution:
//   B_j = (1/|C|) * sum_i A_i K_j(i).
// Exactness is self-checking: every coefficient must divide out to a
// nonnegative integer and the total must be q^n / |C|.
inline WeightDist macwilliams_transform(const WeightDist& a, int n, std::uint32_t q) {
    if (int(a.size()) != n + 1)
        throw std::invalid_argument("macwilliams_transform(): histogram size must be n+1");
    bigint size_c = dist_total(a);
    if (size_c <= 0) throw std::invalid_argument("macwilliams_transform(): empty distribution");
    WeightDist b(n + 1);
    for (int j = 0; j <= n; ++j) {
        bigint acc = 0;
        for (int i = 0; i <= n; ++i) {
            if (a[i] == 0) continue;
            acc += a[i] * detail::krawtchouk(j, i, n, q);
        }
        if (acc % size_c != 0 || acc < 0)
            throw std::logic_error("macwilliams_transform(): non-integral dual coefficient at weight " +
                                   std::to_string(j) + " (input not a linear code distribution?)");
        b[j] = acc / size_c;
    }
    bigint qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    if (dist_total(b) * size_c != qn)
        throw std::logic_error("macwilliams_transform(): dual total mismatch");
    return b;
}

// Histogram of a set difference A \ B for B a subcode of A: pointwise
// subtraction, validated to stay nonnegative.
inline WeightDist dist_subtract(const WeightDist& a, const WeightDist& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dist_subtract(): size mismatch");
    WeightDist r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0)
            throw std::logic_error("dist_subtract(): negative count at weight " + std::to_string(i) +
                                   " (second argument is not a subcode)");
    }
    return r;
}

} // namespace subsys
