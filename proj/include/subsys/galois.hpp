#pragma once
#include <algorithm>
#include <cstdint>
#include <vector>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "subsys/detail/primitive_moduli.hpp"

// Arithmetic in GF(p^m) for p^m <= 2^16.
//
// Elements are stored as integers in [0, p^m): the base-p digits of the value
// are the coefficients of the element in the polynomial basis {1, x, ...,
// x^(m-1)} modulo a fixed primitive polynomial.  Multiplication runs through
// exp/log tables of the generator x (or the smallest primitive root when
// m == 1), so the zero/nonzero split is the only branch in the hot path.

namespace subsys {

using felt = std::uint16_t; // raw element value, index into field tables

class FieldSpec {
public:
    // Shared immutable instance per (p, m).  Pointer equality identifies the
    // field everywhere else in the library.
    static const FieldSpec& get(std::uint32_t p, std::uint32_t m);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }

    // Modulus coefficients, low degree first, length m+1, monic.
    const std::vector<std::uint8_t>& modulus() const { return modulus_; }

    felt zero() const { return 0; }
    felt one() const { return 1; }

    // Generator of the multiplicative group: the class of x for m >= 2, the
    // smallest primitive root mod p for m == 1.
    felt primitive() const { return generator_; }

    felt add(felt a, felt b) const {
        if (p_ == 2) return a ^ b;
        if (!add_tab_.empty()) return add_tab_[std::size_t(a) * q_ + b];
        return add_digitwise(a, b);
    }
    felt neg(felt a) const { return neg_tab_[a]; }
    felt sub(felt a, felt b) const { return add(a, neg(b)); }

    felt mul(felt a, felt b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[std::size_t(log_[a]) + log_[b]];
    }
    felt inv(felt a) const {
        if (a == 0) throw std::domain_error("FieldSpec::inv(): zero element");
        return exp_[q_ - 1 - log_[a]];
    }
    felt div(felt a, felt b) const {
        if (b == 0) throw std::domain_error("FieldSpec::div(): zero divisor");
        if (a == 0) return 0;
        return exp_[std::size_t(log_[a]) + q_ - 1 - log_[b]];
    }

    felt pow(felt a, long long e) const {
        if (a == 0) {
            if (e < 0) throw std::domain_error("FieldSpec::pow(): 0 to negative power");
            return e == 0 ? 1 : 0;
        }
        long long r = e % (q_ - 1);
        if (r < 0) r += q_ - 1;
        return exp_[std::size_t((std::uint64_t(log_[a]) * std::uint64_t(r)) % (q_ - 1))];
    }

    // x^(p^e), the e-th power of the absolute Frobenius.
    felt frobenius(felt a, std::uint32_t e) const {
        felt r = a;
        for (std::uint32_t i = 0; i < e % m_; ++i) r = pow(r, p_);
        return r;
    }

    // Conjugation x -> x^q0 where q0 = p^(m/2); defined only when m is even,
    // i.e. when this field is GF(q0^2) over its index-2 subfield.
    felt conj_sqrt(felt a) const {
        if (m_ % 2 != 0)
            throw std::domain_error("FieldSpec::conj_sqrt(): extension degree is odd, no GF(sqrt(q)) structure");
        return frobenius(a, m_ / 2);
    }
    // Size of the subfield fixed by conj_sqrt.
    std::uint32_t sqrt_q() const {
        if (m_ % 2 != 0)
            throw std::domain_error("FieldSpec::sqrt_q(): extension degree is odd");
        return ipow_u32(p_, m_ / 2);
    }

    // Trace into GF(p^s) for s | m: sum of x^(p^(s*i)).  The result is an
    // element of this field whose value lies in the subfield image.
    felt trace(felt a, std::uint32_t s = 1) const {
        if (s == 0 || m_ % s != 0)
            throw std::invalid_argument("FieldSpec::trace(): subfield degree must divide m");
        felt acc = 0, t = a;
        for (std::uint32_t i = 0; i < m_ / s; ++i) {
            acc = add(acc, t);
            t = frobenius(t, s);
        }
        return acc;
    }

    // Absolute trace as a prime-field digit in [0, p).  Elements of the prime
    // subfield are exactly the values 0..p-1, so the value is its own digit.
    std::uint8_t trace_to_prime(felt a) const { return std::uint8_t(trace(a, 1)); }

    std::uint8_t digit(felt a, std::uint32_t i) const {
        for (std::uint32_t j = 0; j < i; ++j) a = felt(a / p_);
        return std::uint8_t(a % p_);
    }
    felt from_digits(const std::uint8_t* d) const {
        std::uint32_t v = 0;
        for (std::uint32_t i = m_; i-- > 0;) v = v * p_ + d[i] % p_;
        return felt(v);
    }

    // Embedding of GF(p^sm) into this field, sm | m.  into_big maps small
    // field values to their images; from_big inverts it (-1 marks elements
    // outside the subfield).  The generator image is the root of the small
    // field's modulus with the smallest value, so the embedding is canonical.
    struct Subfield {
        const FieldSpec* sub = nullptr;
        std::vector<felt> into_big;
        std::vector<std::int32_t> from_big;
    };
    const Subfield& subfield(std::uint32_t sm) const;

    bool operator==(const FieldSpec& o) const { return this == &o; }

private:
    FieldSpec(std::uint32_t p, std::uint32_t m);
    FieldSpec(const FieldSpec&) = delete;

    felt add_digitwise(felt a, felt b) const {
        std::uint32_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r += mult * ((a % p_ + b % p_) % p_);
            a = felt(a / p_); b = felt(b / p_);
            mult *= p_;
        }
        return felt(r);
    }

    static std::uint32_t ipow_u32(std::uint32_t b, std::uint32_t e) {
        std::uint32_t r = 1;
        while (e--) r *= b;
        return r;
    }

    std::uint32_t p_, m_, q_;
    felt generator_ = 0;
    std::vector<std::uint8_t> modulus_;
    std::vector<felt> exp_;  // size 2(q-1), wraps so log sums index directly
    std::vector<std::uint16_t> log_; // size q, log_[0] unused
    std::vector<felt> neg_tab_;
    std::vector<felt> add_tab_; // full q*q table when q <= 1024, else empty
    mutable std::map<std::uint32_t, std::unique_ptr<Subfield>> subfields_;
    mutable std::mutex sub_mutex_;
};

inline const FieldSpec& make_field(std::uint32_t p, std::uint32_t m) { return FieldSpec::get(p, m); }

// Convenience for q given as a prime power: factors q = p^m and fetches the
// field, rejecting non prime powers.
inline const FieldSpec& field_of_order(std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("field_of_order(): order must be at least 2");
    std::uint32_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q; // q prime
    std::uint32_t m = 0, t = q;
    while (t % p == 0) { t /= p; ++m; }
    if (t != 1)
        throw std::invalid_argument("field_of_order(): " + std::to_string(q) + " is not a prime power");
    return FieldSpec::get(p, m);
}

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint32_t smallest_primitive_root(std::uint32_t p) {
    if (p == 2) return 1;
    std::vector<std::uint32_t> fs;
    std::uint32_t n = p - 1;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    auto powmod = [p](std::uint64_t b, std::uint32_t e) {
        std::uint64_t r = 1; b %= p;
        while (e) { if (e & 1) r = r * b % p; b = b * b % p; e >>= 1; }
        return std::uint32_t(r);
    };
    for (std::uint32_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint32_t f : fs)
            if (powmod(g, (p - 1) / f) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root(): none found (not prime?)");
}

} // namespace detail

inline FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
    if (!detail::is_prime_u32(p))
        throw std::invalid_argument("FieldSpec: characteristic " + std::to_string(p) + " is not prime");
    if (m < 1 || m > 16)
        throw std::invalid_argument("FieldSpec: extension degree must be in [1, 16]");
    std::uint64_t q64 = 1;
    for (std::uint32_t i = 0; i < m; ++i) q64 *= p;
    if (q64 > 65536)
        throw std::invalid_argument("FieldSpec: field order " + std::to_string(q64) + " exceeds 2^16");
    q_ = std::uint32_t(q64);

    modulus_.assign(m + 1, 0);
    if (m == 1) {
        // x - g with g the smallest primitive root: the class of x is g.
        std::uint32_t g = detail::smallest_primitive_root(p);
        modulus_[0] = std::uint8_t(p - g % p);
        modulus_[1] = 1;
        generator_ = felt(g);
    } else {
        const detail::ModulusEntry* hit = nullptr;
        for (const auto& e : detail::kPrimitiveModuli)
            if (e.p == p && e.m == m) { hit = &e; break; }
        if (!hit)
            throw std::logic_error("FieldSpec: no tabulated modulus for GF(" +
                                   std::to_string(p) + "^" + std::to_string(m) + ")");
        std::uint64_t enc = hit->poly;
        for (std::uint32_t i = 0; i <= m; ++i) { modulus_[i] = std::uint8_t(enc % p); enc /= p; }
        if (modulus_[m] != 1) throw std::logic_error("FieldSpec: tabulated modulus is not monic");
        generator_ = felt(p); // the class of x
    }

    // Build exp by repeated multiplication by the generator using direct
    // digit arithmetic.  Seeing every nonzero value exactly once before
    // returning to 1 proves the modulus is primitive (hence irreducible).
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    std::vector<std::uint8_t> cur(m, 0), nxt(m, 0);
    cur[0] = 1;
    std::vector<bool> seen(q_, false);
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        std::uint32_t v = 0;
        for (std::uint32_t j = m; j-- > 0;) v = v * p_ + cur[j];
        if (v == 0 || seen[v])
            throw std::logic_error("FieldSpec: modulus failed the primitivity walk");
        seen[v] = true;
        exp_[i] = exp_[i + q_ - 1] = felt(v);
        log_[v] = std::uint16_t(i);
        // nxt = cur * generator mod modulus
        if (m == 1) {
            nxt[0] = std::uint8_t(std::uint32_t(cur[0]) * generator_ % p_);
        } else {
            std::uint8_t carry = cur[m - 1];
            for (std::uint32_t j = m; j-- > 1;) nxt[j] = cur[j - 1];
            nxt[0] = 0;
            if (carry)
                for (std::uint32_t j = 0; j < m; ++j)
                    nxt[j] = std::uint8_t((nxt[j] + std::uint32_t(p_ - modulus_[j]) * carry) % p_);
        }
        cur.swap(nxt);
    }
    if (cur[0] != 1 || (m > 1 && std::any_of(cur.begin() + 1, cur.end(), [](std::uint8_t c) { return c != 0; })))
        throw std::logic_error("FieldSpec: generator order is not q-1");

    neg_tab_.assign(q_, 0);
    for (std::uint32_t v = 0; v < q_; ++v) {
        std::uint32_t r = 0, mult = 1, a = v;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r += mult * ((p_ - a % p_) % p_);
            a /= p_; mult *= p_;
        }
        neg_tab_[v] = felt(r);
    }
    if (p_ != 2 && q_ <= 1024) {
        add_tab_.assign(std::size_t(q_) * q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b <= a; ++b) {
                felt s = add_digitwise(felt(a), felt(b));
                add_tab_[std::size_t(a) * q_ + b] = s;
                add_tab_[std::size_t(b) * q_ + a] = s;
            }
    }
}

inline const FieldSpec& FieldSpec::get(std::uint32_t p, std::uint32_t m) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldSpec>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, m))).first;
    return *it->second;
}

inline const FieldSpec::Subfield& FieldSpec::subfield(std::uint32_t sm) const {
    if (sm == 0 || m_ % sm != 0)
        throw std::invalid_argument("FieldSpec::subfield(): degree " + std::to_string(sm) +
                                    " does not divide " + std::to_string(m_));
    std::lock_guard<std::mutex> lk(sub_mutex_);
    auto it = subfields_.find(sm);
    if (it != subfields_.end()) return *it->second;

    auto sf = std::make_unique<Subfield>();
    sf->sub = &FieldSpec::get(p_, sm);
    const FieldSpec& S = *sf->sub;
    // Image of the small generator: smallest root in this field of the small
    // field's modulus (coefficients are prime-field digits, which embed as
    // themselves).
    felt root = 0;
    bool found = false;
    for (std::uint32_t v = 0; v < q_ && !found; ++v) {
        felt acc = 0, xp = 1;
        for (std::uint32_t i = 0; i <= sm; ++i) {
            acc = add(acc, mul(felt(S.modulus()[i]), xp));
            xp = mul(xp, felt(v));
        }
        if (acc == 0 && (sm == 1 ? true : v >= p_)) { root = felt(v); found = true; }
    }
    if (!found) throw std::logic_error("FieldSpec::subfield(): modulus has no root in the big field");

    sf->into_big.assign(S.q(), 0);
    sf->from_big.assign(q_, -1);
    for (std::uint32_t v = 0; v < S.q(); ++v) {
        felt acc = 0, xp = 1;
        std::uint32_t t = v;
        for (std::uint32_t i = 0; i < sm; ++i) {
            acc = add(acc, mul(felt(t % p_), xp));
            xp = mul(xp, root);
            t /= p_;
        }
        sf->into_big[v] = acc;
        sf->from_big[acc] = std::int32_t(v);
    }
    // Embeddings are injective field morphisms; a collision means the root
    // search above picked a repeated image and must not happen.
    for (std::uint32_t v = 1; v < S.q(); ++v)
        if (sf->into_big[v] == 0 || (v != 1 && sf->into_big[v] == sf->into_big[1]))
            throw std::logic_error("FieldSpec::subfield(): embedding is not injective");

    auto& slot = subfields_[sm];
    slot = std::move(sf);
    return *slot;
}

// Value-semantic element with operator sugar.  Carries its field, so mixing
// fields is caught at run time.
class FieldElement {
public:
    FieldElement() : f_(nullptr), v_(0) {}
    FieldElement(const FieldSpec& f, felt v) : f_(&f), v_(v) {
        if (v >= f.q()) throw std::out_of_range("FieldElement: value outside field");
    }
    const FieldSpec& field() const { check(); return *f_; }
    felt value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(FieldElement o) const { same(o); return {*f_, f_->add(v_, o.v_)}; }
    FieldElement operator-(FieldElement o) const { same(o); return {*f_, f_->sub(v_, o.v_)}; }
    FieldElement operator*(FieldElement o) const { same(o); return {*f_, f_->mul(v_, o.v_)}; }
    FieldElement operator/(FieldElement o) const { same(o); return {*f_, f_->div(v_, o.v_)}; }
    FieldElement operator-() const { check(); return {*f_, f_->neg(v_)}; }
    FieldElement inverse() const { check(); return {*f_, f_->inv(v_)}; }
    FieldElement pow(long long e) const { check(); return {*f_, f_->pow(v_, e)}; }
    FieldElement trace(std::uint32_t s = 1) const { check(); return {*f_, f_->trace(v_, s)}; }
    FieldElement conj_q() const { check(); return {*f_, f_->conj_sqrt(v_)}; }
    bool operator==(FieldElement o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(FieldElement o) const { return !(*this == o); }

private:
    void check() const { if (!f_) throw std::logic_error("FieldElement: default constructed"); }
    void same(FieldElement o) const {
        check();
        if (f_ != o.f_) throw std::invalid_argument("FieldElement: mixed fields");
    }
    const FieldSpec* f_;
    felt v_;
};

// Dense univariate polynomials over a fixed field, low coefficient first,
// normalized so the leading coefficient is nonzero (zero polynomial has an
// empty coefficient vector and degree -1).
class Poly {
public:
    explicit Poly(const FieldSpec& f) : f_(&f) {}
    Poly(const FieldSpec& f, std::vector<felt> c) : f_(&f), c_(std::move(c)) { trim(); }

    static Poly zero(const FieldSpec& f) { return Poly(f); }
    static Poly one(const FieldSpec& f) { return Poly(f, {1}); }
    // x^d with coefficient c
    static Poly monomial(const FieldSpec& f, std::uint32_t d, felt c = 1) {
        std::vector<felt> v(d + 1, 0);
        v[d] = c;
        return Poly(f, std::move(v));
    }

    const FieldSpec& field() const { return *f_; }
    const std::vector<felt>& coeffs() const { return c_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    felt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    felt leading() const { return c_.empty() ? 0 : c_.back(); }

    Poly operator+(const Poly& o) const {
        same(o);
        std::vector<felt> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(i), o.coeff(i));
        return Poly(*f_, std::move(r));
    }
    Poly operator-(const Poly& o) const {
        same(o);
        std::vector<felt> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(i), o.coeff(i));
        return Poly(*f_, std::move(r));
    }
    Poly operator*(const Poly& o) const {
        same(o);
        if (is_zero() || o.is_zero()) return Poly(*f_);
        std::vector<felt> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                if (o.c_[j] != 0) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
        }
        return Poly(*f_, std::move(r));
    }
    Poly scaled(felt s) const {
        std::vector<felt> r(c_);
        for (auto& x : r) x = f_->mul(x, s);
        return Poly(*f_, std::move(r));
    }

    // Returns {quotient, remainder}. Throws on zero divisor.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        same(d);
        if (d.is_zero()) throw std::domain_error("Poly::divmod(): division by zero polynomial");
        Poly rem = *this;
        std::vector<felt> quo(std::max<int>(0, degree() - d.degree() + 1), 0);
        felt lead_inv = f_->inv(d.leading());
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            felt c = f_->mul(rem.leading(), lead_inv);
            quo[shift] = c;
            // rem -= c * x^shift * d
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                rem.c_[i + shift] = f_->sub(rem.c_[i + shift], f_->mul(c, d.c_[i]));
            rem.trim();
        }
        return {Poly(*f_, std::move(quo)), rem};
    }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly operator/(const Poly& d) const { return divmod(d).first; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(f_->inv(leading()));
    }

    felt eval(felt x) const {
        felt acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
        return acc;
    }

    bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    void same(const Poly& o) const {
        if (f_ != o.f_) throw std::invalid_argument("Poly: mixed fields");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const FieldSpec* f_;
    std::vector<felt> c_;
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

} // namespace subsys
