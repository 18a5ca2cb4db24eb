#pragma once
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "subsys/galois.hpp"

// Cyclotomic cosets mod n and defining sets of q-ary cyclic codes, gcd(n,q)=1.
// The whole calculus of intersections, sums, duals and containments of cyclic
// codes happens here on integer sets; generator polynomials are only
// materialized on demand.
//
// Conventions: a cyclic code of length n over GF(q) is identified by its
// defining set T, the exponents t such that alpha^t is a root of every
// codeword (alpha a fixed primitive n-th root of unity).  dim = n - |T|.
//   intersection of codes  <->  union of defining sets
//   sum of codes           <->  intersection of defining sets
//   C1 subset of C2        <->  T2 subset of T1
//   Euclidean dual         <->  N minus T^(-1)
//   Hermitian dual (q=r^2) <->  N minus T^(-r)

namespace subsys {

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// Multiplicative order of q mod n; requires gcd(n, q) = 1.
inline std::uint32_t mult_order(std::uint64_t q, std::uint32_t n) {
    if (n == 1) return 1;
    if (std::gcd(q % n, std::uint64_t(n)) != 1)
        throw std::invalid_argument("mult_order(): gcd(n, q) != 1");
    std::uint64_t t = q % n;
    std::uint32_t ord = 1;
    while (t != 1) {
        t = t * (q % n) % n;
        if (++ord > n) throw std::logic_error("mult_order(): runaway");
    }
    return ord;
}

// The coset {x, xq, xq^2, ...} mod n, sorted ascending.
inline std::vector<int> cyclotomic_coset(int x, int n, std::uint32_t q) {
    if (n < 1) throw std::invalid_argument("cyclotomic_coset(): n must be positive");
    if (std::gcd<long long>(n, q) != 1)
        throw std::invalid_argument("cyclotomic_coset(): gcd(n, q) != 1");
    x = ((x % n) + n) % n;
    std::vector<int> c;
    int t = x;
    do {
        c.push_back(t);
        t = int(std::uint64_t(t) * q % n);
    } while (t != x);
    std::sort(c.begin(), c.end());
    return c;
}

class DefiningSet {
public:
    DefiningSet(int n, std::uint32_t q, std::vector<int> members)
        : n_(n), q_(q), members_(std::move(members)) {
        if (n_ < 1) throw std::invalid_argument("DefiningSet: n must be positive");
        if (std::gcd<long long>(n_, q_) != 1)
            throw std::invalid_argument("DefiningSet: gcd(n, q) != 1");
        for (int& t : members_) t = ((t % n_) + n_) % n_;
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        for (int t : members_)
            if (!contains(int(std::uint64_t(t) * q_ % n_)))
                throw std::invalid_argument("DefiningSet: not closed under multiplication by q (t=" +
                                            std::to_string(t) + ")");
    }

    static DefiningSet empty(int n, std::uint32_t q) { return DefiningSet(n, q, {}); }
    static DefiningSet full(int n, std::uint32_t q) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        return DefiningSet(n, q, std::move(all));
    }
    static DefiningSet from_coset_leaders(int n, std::uint32_t q, const std::vector<int>& leaders) {
        std::vector<int> m;
        for (int x : leaders) {
            auto c = cyclotomic_coset(x, n, q);
            m.insert(m.end(), c.begin(), c.end());
        }
        return DefiningSet(n, q, std::move(m));
    }

    int n() const { return n_; }
    std::uint32_t q() const { return q_; }
    const std::vector<int>& members() const { return members_; }
    int size() const { return int(members_.size()); }
    bool contains(int t) const {
        t = ((t % n_) + n_) % n_;
        return std::binary_search(members_.begin(), members_.end(), t);
    }
    bool contains_set(const DefiningSet& o) const {
        same_ring(o);
        return std::includes(members_.begin(), members_.end(), o.members_.begin(), o.members_.end());
    }

    DefiningSet unite(const DefiningSet& o) const {
        same_ring(o);
        std::vector<int> r;
        std::set_union(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                       std::back_inserter(r));
        return DefiningSet(n_, q_, std::move(r));
    }
    DefiningSet intersect(const DefiningSet& o) const {
        same_ring(o);
        std::vector<int> r;
        std::set_intersection(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                              std::back_inserter(r));
        return DefiningSet(n_, q_, std::move(r));
    }
    DefiningSet minus(const DefiningSet& o) const {
        same_ring(o);
        std::vector<int> r;
        std::set_difference(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                            std::back_inserter(r));
        // A set difference of q-closed sets is q-closed, so this revalidates fine.
        return DefiningSet(n_, q_, std::move(r));
    }
    DefiningSet complement() const {
        std::vector<int> r;
        int j = 0;
        for (int t = 0; t < n_; ++t) {
            if (j < int(members_.size()) && members_[j] == t) { ++j; continue; }
            r.push_back(t);
        }
        return DefiningSet(n_, q_, std::move(r));
    }
    // T^a = {a t mod n}; a must be a unit mod n or cosets would collapse.
    DefiningSet scale(long long a) const {
        long long ar = ((a % n_) + n_) % n_;
        if (std::gcd(ar == 0 ? n_ : ar, (long long)n_) != 1)
            throw std::invalid_argument("DefiningSet::scale(): multiplier " + std::to_string(a) +
                                        " is not a unit mod " + std::to_string(n_));
        std::vector<int> r(members_.size());
        for (std::size_t i = 0; i < members_.size(); ++i)
            r[i] = int(std::uint64_t(members_[i]) * std::uint64_t(ar) % n_);
        return DefiningSet(n_, q_, std::move(r));
    }

    bool operator==(const DefiningSet& o) const {
        return n_ == o.n_ && q_ == o.q_ && members_ == o.members_;
    }
    bool operator!=(const DefiningSet& o) const { return !(*this == o); }

private:
    void same_ring(const DefiningSet& o) const {
        if (n_ != o.n_ || q_ != o.q_)
            throw std::invalid_argument("DefiningSet: operands live in different rings");
    }
    int n_;
    std::uint32_t q_;
    std::vector<int> members_;
};

// Defining set of the dual code: N minus T^(-1).
inline DefiningSet euclidean_dual_ds(const DefiningSet& t) {
    return t.scale(-1).complement();
}

// Defining set of the Hermitian dual over GF(q) with q = r^2: N minus T^(-r).
inline DefiningSet hermitian_dual_ds(const DefiningSet& t) {
    std::uint32_t q = t.q();
    std::uint32_t r = std::uint32_t(std::llround(std::sqrt(double(q))));
    if (r * r != q)
        throw std::invalid_argument("hermitian_dual_ds(): field order " + std::to_string(q) +
                                    " is not a square");
    return t.scale(-(long long)r).complement();
}

// Narrow-sense (b=1) or general BCH defining set: union of cosets C_b .. C_(b+delta-2).
inline DefiningSet bch_defining_set(int n, std::uint32_t q, int delta, int b = 1) {
    if (delta < 1 || delta > n + 1)
        throw std::invalid_argument("bch_defining_set(): designed distance out of range");
    std::vector<int> leaders;
    for (int a = b; a <= b + delta - 2; ++a) leaders.push_back(a);
    return DefiningSet::from_coset_leaders(n, q, leaders);
}

// BCH bound from the defining set: one plus the length of the longest run of
// cyclically consecutive exponents contained in T.  Returns 1 for an empty
// set and n+1 for the full set (the zero code).
inline int bch_bound(const DefiningSet& t) {
    int n = t.n();
    if (t.size() == 0) return 1;
    if (t.size() == n) return n + 1;
    int best = 0, run = 0;
    // Scan two laps to catch runs that wrap around n-1 -> 0.
    for (int i = 0; i < 2 * n; ++i) {
        if (t.contains(i % n)) {
            ++run;
            best = std::max(best, std::min(run, n));
        } else {
            run = 0;
        }
    }
    return best + 1;
}

// A cyclic code over GF(q), represented purely by its defining set.
struct CyclicCode {
    DefiningSet ts;
    int n() const { return ts.n(); }
    std::uint32_t q() const { return ts.q(); }
    int dim() const { return ts.n() - ts.size(); }
    // Degree of the splitting field of x^n - 1 over GF(q).
    std::uint32_t root_field_degree() const { return mult_order(ts.q(), std::uint32_t(ts.n())); }
};

// Generator polynomial g(x) = prod over t in T of (x - alpha^t), computed in
// the splitting field GF(q^m') and mapped back; throws if the splitting field
// would exceed 2^16 or if any coefficient lands outside GF(q).
inline Poly generator_poly(const CyclicCode& c) {
    const FieldSpec& base = field_of_order(c.q());
    std::uint32_t mp = c.root_field_degree();
    std::uint64_t big_q = 1;
    for (std::uint32_t i = 0; i < base.m() * mp; ++i) {
        big_q *= base.p();
        if (big_q > 65536)
            throw std::domain_error("generator_poly(): splitting field GF(" + std::to_string(c.q()) +
                                    "^" + std::to_string(mp) + ") exceeds 2^16");
    }
    const FieldSpec& big = FieldSpec::get(base.p(), base.m() * mp);
    const auto& emb = big.subfield(base.m());

    // alpha = gamma^((Q-1)/n) is a primitive n-th root of unity.
    std::uint64_t step = (big.q() - 1) / std::uint64_t(c.n());
    if (step * c.n() != big.q() - 1)
        throw std::logic_error("generator_poly(): n does not divide Q-1");
    felt alpha = big.pow(big.primitive(), (long long)step);

    Poly g = Poly::one(big);
    for (int t : c.ts.members()) {
        felt root = big.pow(alpha, t);
        g = g * Poly(big, {big.neg(root), 1});
    }

    std::vector<felt> down(g.coeffs().size());
    for (std::size_t i = 0; i < down.size(); ++i) {
        std::int32_t v = emb.from_big[g.coeff(i)];
        if (v < 0)
            throw std::logic_error("generator_poly(): coefficient escaped GF(q); defining set not q-closed?");
        down[i] = felt(v);
    }
    Poly result(base, std::move(down));

    // g must divide x^n - 1 over the base field.
    Poly xn1 = Poly::monomial(base, std::uint32_t(c.n())) - Poly::one(base);
    if (!(xn1 % result).is_zero())
        throw std::logic_error("generator_poly(): result does not divide x^n - 1");
    return result;
}

} // namespace subsys
