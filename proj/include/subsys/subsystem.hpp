#pragma once
// Parameter engine for subsystem codes.  From a nonzero additive gauge code
// C <= F_q^(2n) it derives the descriptor ((n, K, R, d))_q:
//
//   D = C intersect C^perp_s,  x = |C|,  y = |D|,
//   K = q^n / sqrt(xy),  R = sqrt(x/y),
//   d = swt(D^perp_s - C)  (or swt(C) in the degenerate case D^perp_s = C),
//
// together with the Euclidean and Hermitian classical constructions, purity
// classification, and the Singleton / Hamming bound checks.  All dimension
// square roots are exponent halvings on exact prime powers, never floats.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subsys/galois.hpp"
#include "subsys/lincode.hpp"
#include "subsys/symplectic.hpp"
#include "subsys/weights.hpp"

namespace subsys {

// Exact prime power p^e.
struct PrimePower {
    std::uint32_t p = 2;
    std::uint32_t exp = 0;

    bigint value() const {
        bigint v = 1;
        for (std::uint32_t i = 0; i < exp; ++i) v *= p;
        return v;
    }
    bool is_one() const { return exp == 0; }
    // Exponent in base p^m, when integral: p^exp = (p^m)^(exp/m).
    std::optional<long long> log_base(std::uint32_t m) const {
        if (m == 0 || exp % m != 0) return std::nullopt;
        return (long long)(exp / m);
    }
    bool operator==(const PrimePower& o) const {
        return (exp == o.exp) && (exp == 0 || p == o.p);
    }
    std::string str() const { return value().str(); }
};

enum class Purity { pure, impure, unknown };

inline const char* purity_name(Purity p) {
    switch (p) {
        case Purity::pure: return "pure";
        case Purity::impure: return "impure";
        default: return "unknown";
    }
}

/*
 * Decide purity from pure_to = swt(gauge) and the distance.  The code is
 * pure iff swt(C) >= d.  With only a lower bound v <= d available the
 * comparison is still decisive when swt(C) < v; otherwise it is open.
 */
inline Purity classify_purity(std::optional<long long> pure_to, const Distance& d) {
    if (!pure_to) return Purity::unknown;
    if (d.is_exact()) return *pure_to >= d.value ? Purity::pure : Purity::impure;
    return *pure_to < d.value ? Purity::impure : Purity::unknown;
}

// Immutable parameter record of a subsystem code.  K (logical subsystem
// dimension) and R (gauge co-subsystem dimension) are exact prime powers;
// the familiar bracket form [[n,k,r,d]]_q exists only when both are powers
// of q itself.  A record with K = 1 is forced pure: the whole space
// decomposes into gauge qudits, so any minimum-weight element of D^perp_s
// already lies in the gauge group.
class SubsystemDescriptor {
  public:
    SubsystemDescriptor(std::uint32_t q, std::uint32_t n, PrimePower K, PrimePower R,
                        Distance d, std::optional<long long> pure_to, Purity purity,
                        bool is_linear, std::vector<std::string> provenance)
        : q_(q), n_(n), K_(K), R_(R), d_(d), pure_to_(pure_to), purity_(purity),
          linear_(is_linear), prov_(std::move(provenance)) {
        const FieldSpec& f = field_of_order(q);
        if (n == 0) throw std::invalid_argument("SubsystemDescriptor: length must be positive");
        if (!K_.is_one() && K_.p != f.p())
            throw std::invalid_argument("SubsystemDescriptor: K is not a power of char(GF(q))");
        if (!R_.is_one() && R_.p != f.p())
            throw std::invalid_argument("SubsystemDescriptor: R is not a power of char(GF(q))");
        K_.p = f.p();
        R_.p = f.p();
        if (K_.exp + R_.exp > std::uint64_t(n) * f.m())
            throw std::invalid_argument("SubsystemDescriptor: K*R exceeds q^n");
        if (d_.value < 1)
            throw std::invalid_argument("SubsystemDescriptor: distance must be positive");
        if (pure_to_ && *pure_to_ < 1)
            throw std::invalid_argument("SubsystemDescriptor: pure_to must be positive");
        if (K_.is_one()) {
            if (purity_ == Purity::impure)
                throw std::invalid_argument(
                    "SubsystemDescriptor: a code with K = 1 cannot be impure");
            purity_ = Purity::pure;
        }
    }

    // Convenience for q-ary bracket parameters [[n,k,r,d]]_q.
    static SubsystemDescriptor from_brackets(std::uint32_t q, std::uint32_t n, std::uint32_t k,
                                             std::uint32_t r, Distance d,
                                             std::optional<long long> pure_to = std::nullopt,
                                             Purity purity = Purity::unknown,
                                             bool is_linear = false,
                                             std::vector<std::string> provenance = {}) {
        const FieldSpec& f = field_of_order(q);
        return SubsystemDescriptor(q, n, PrimePower{f.p(), k * f.m()},
                                   PrimePower{f.p(), r * f.m()}, d, pure_to, purity, is_linear,
                                   std::move(provenance));
    }

    std::uint32_t q() const { return q_; }
    std::uint32_t n() const { return n_; }
    const PrimePower& K() const { return K_; }
    const PrimePower& R() const { return R_; }
    const Distance& d() const { return d_; }
    std::optional<long long> pure_to() const { return pure_to_; }
    Purity purity() const { return purity_; }
    bool is_pure() const { return purity_ == Purity::pure; }
    bool is_linear() const { return linear_; }
    bool is_stabilizer() const { return R_.is_one(); }
    const std::vector<std::string>& provenance() const { return prov_; }

    // q-ary exponents; nullopt when K (resp. R) is not a power of q.
    std::optional<long long> k() const { return K_.log_base(field_of_order(q_).m()); }
    std::optional<long long> r() const { return R_.log_base(field_of_order(q_).m()); }
    bool has_brackets() const { return k().has_value() && r().has_value(); }

    SubsystemDescriptor with_provenance(std::string record) const {
        SubsystemDescriptor c = *this;
        c.prov_.push_back(std::move(record));
        return c;
    }

    std::string str() const {
        std::ostringstream os;
        if (has_brackets())
            os << "[[" << n_ << "," << *k() << "," << *r() << "," << d_.str() << "]]_" << q_;
        else
            os << "((" << n_ << "," << K_.str() << "," << R_.str() << "," << d_.str() << "))_"
               << q_;
        return os.str();
    }

    bool operator==(const SubsystemDescriptor& o) const {
        return q_ == o.q_ && n_ == o.n_ && K_ == o.K_ && R_ == o.R_ && d_ == o.d_ &&
               pure_to_ == o.pure_to_ && purity_ == o.purity_ && linear_ == o.linear_;
    }

  private:
    std::uint32_t q_, n_;
    PrimePower K_, R_;
    Distance d_;
    std::optional<long long> pure_to_;
    Purity purity_;
    bool linear_;
    std::vector<std::string> prov_;
};

/*
 * Core derivation: gauge code C != {0} in F_q^(2n) determines
 *   D = C intersect C^perp_s, |C| = p^c, |D| = p^s,
 *   R = p^((c-s)/2), K = p^(nm - (c+s)/2),
 * and d = swt(D^perp_s - C) except when D^perp_s = C (equivalently K = 1),
 * where d = swt(C).  Enumeration past `budget` degrades d to a lower bound
 * seeded by `designed` (the caller's designed distance) or 1.
 */
inline SubsystemDescriptor from_additive(const AdditiveCode& c,
                                         const EnumBudget& budget = EnumBudget::from_env(),
                                         std::optional<long long> designed = std::nullopt) {
    if (c.dim_p() == 0)
        throw std::invalid_argument("from_additive(): gauge code must be nonzero");
    const FieldSpec& f = c.field();
    const std::uint32_t n = std::uint32_t(c.n());
    const std::uint64_t nm = std::uint64_t(n) * f.m();

    AdditiveCode dual = symp_dual(c);
    AdditiveCode d_code = c.intersect(dual);
    const int dim_c = c.dim_p();
    const int dim_s = d_code.dim_p();
    if ((dim_c - dim_s) % 2 != 0)
        throw std::logic_error("from_additive(): |C|/|D| is not a perfect square");
    const std::uint32_t r_exp = std::uint32_t(dim_c - dim_s) / 2;
    const long long k_signed = (long long)nm - dim_s - (long long)r_exp;
    if (k_signed < 0)
        throw std::logic_error("from_additive(): radical exceeds an isotropic subspace");
    PrimePower K{f.p(), std::uint32_t(k_signed)};
    PrimePower R{f.p(), r_exp};

    AdditiveCode dperp = symp_dual(d_code);
    const bool degenerate = (dperp.dim_p() == dim_c) && dperp.contains(c);

    Distance d = Distance::at_least(designed.value_or(1));
    std::optional<long long> pure_to;
    Purity purity = Purity::unknown;
    if (degenerate) {
        if (auto sw = swt_min(c, budget)) {
            d = Distance::exact(*sw);
            pure_to = *sw;
        }
        purity = Purity::pure;
    } else {
        if (auto cm = swt_coset_min(dperp, c, budget)) d = Distance::exact(*cm);
        if (auto sw = swt_min(c, budget)) pure_to = *sw;
        purity = classify_purity(pure_to, d);
    }

    std::ostringstream rec;
    rec << "additive gauge code: n=" << n << " q=" << f.q() << " |C|=" << f.p() << "^" << dim_c
        << " |D|=" << f.p() << "^" << dim_s;
    return SubsystemDescriptor(f.q(), n, K, R, d, pure_to, purity, c.is_gfq_linear(),
                               {rec.str()});
}

/*
 * Euclidean construction.  A classical [n, k'] code C over GF(q) with
 * k'' = dim(C intersect C^perp) and k' + k'' < n yields
 *   [[n, n-(k'+k''), k'-k'', wt(D^perp - C)]]_q,  D = C intersect C^perp,
 * pure to wt(C).  The gauge code is C x C, so swt reduces to Hamming weight
 * on the classical cosets.
 */
inline SubsystemDescriptor euclidean_construction(const LinearCode& c,
                                                  const EnumBudget& budget = EnumBudget::from_env(),
                                                  std::optional<long long> designed = std::nullopt) {
    if (c.k() == 0)
        throw std::invalid_argument("euclidean_construction(): parent code must be nonzero");
    const int n = c.n();
    const int kp = c.k();
    LinearCode d_code = c.intersect(dual_of(c));
    const int kpp = d_code.k();
    if (kp + kpp >= n)
        throw std::invalid_argument(
            "euclidean_construction(): requires dim C + dim(C intersect C^perp) < n");

    Distance d = Distance::at_least(designed.value_or(1));
    if (auto cm = dual_of(d_code).coset_min_weight(c, budget)) d = Distance::exact(*cm);
    std::optional<long long> pure_to;
    if (auto mw = c.min_weight(budget)) pure_to = *mw;
    Purity purity = classify_purity(pure_to, d);

    std::ostringstream rec;
    rec << "euclidean construction: [" << n << "," << kp << "]_" << c.field().q()
        << " parent, k''=" << kpp;
    return SubsystemDescriptor::from_brackets(c.field().q(), std::uint32_t(n),
                                              std::uint32_t(n - kp - kpp),
                                              std::uint32_t(kp - kpp), d, pure_to, purity,
                                              /*is_linear=*/true, {rec.str()});
}

/*
 * Hermitian construction.  A classical [n, k'] code C over GF(q^2) with
 * k'' = dim(C intersect C^perp_h) and k' + k'' < n yields a q-ary
 *   [[n, n-(k'+k''), k'-k'', wt(D^perp_h - C)]]_q,  D = C intersect C^perp_h.
 * The expansion of C into F_q^(2n) is a weight isometry that exchanges the
 * Hermitian and trace-symplectic duals, so every weight here is a plain
 * Hamming computation over GF(q^2).
 */
inline SubsystemDescriptor hermitian_construction(const LinearCode& c,
                                                  const EnumBudget& budget = EnumBudget::from_env(),
                                                  std::optional<long long> designed = std::nullopt) {
    const FieldSpec& f2 = c.field();
    if (f2.m() % 2 != 0)
        throw std::invalid_argument("hermitian_construction(): parent field must be GF(q^2)");
    if (c.k() == 0)
        throw std::invalid_argument("hermitian_construction(): parent code must be nonzero");
    const int n = c.n();
    const int kp = c.k();
    LinearCode d_code = c.intersect(hermitian_dual_of(c));
    const int kpp = d_code.k();
    if (kp + kpp >= n)
        throw std::invalid_argument(
            "hermitian_construction(): requires dim C + dim(C intersect C^perp_h) < n");

    Distance d = Distance::at_least(designed.value_or(1));
    if (auto cm = hermitian_dual_of(d_code).coset_min_weight(c, budget)) d = Distance::exact(*cm);
    std::optional<long long> pure_to;
    if (auto mw = c.min_weight(budget)) pure_to = *mw;
    Purity purity = classify_purity(pure_to, d);

    const std::uint32_t q = f2.sqrt_q();
    std::ostringstream rec;
    rec << "hermitian construction: [" << n << "," << kp << "]_" << f2.q() << " parent, k''="
        << kpp;
    return SubsystemDescriptor::from_brackets(q, std::uint32_t(n), std::uint32_t(n - kp - kpp),
                                              std::uint32_t(kp - kpp), d, pure_to, purity,
                                              /*is_linear=*/true, {rec.str()});
}

// Slack in the Singleton bound k + r <= n - 2d + 2.  With only a lower
// bound on d the true slack can be smaller, so the result is flagged.
struct SingletonResult {
    long long slack = 0;
    bool is_mds = false;
    bool indeterminate = false;
};

inline SingletonResult singleton_check(const SubsystemDescriptor& s) {
    if (!s.has_brackets())
        throw std::invalid_argument("singleton_check(): descriptor has no q-ary bracket form");
    SingletonResult res;
    res.slack = ((long long)s.n() - 2 * s.d().value + 2) - (*s.k() + *s.r());
    res.indeterminate = !s.d().is_exact();
    res.is_mds = (res.slack == 0) && !res.indeterminate;
    return res;
}

// Purity of a descriptor against its concrete gauge code: pure_to = swt(C),
// pure iff swt(C) >= d.  Budget exhaustion leaves the verdict open.
struct PurityResult {
    std::optional<long long> pure_to;
    Purity purity = Purity::unknown;
    bool is_pure() const { return purity == Purity::pure; }
};

inline PurityResult purity_classify(const SubsystemDescriptor& desc, const AdditiveCode& gauge,
                                    const EnumBudget& budget = EnumBudget::from_env()) {
    PurityResult res;
    if (gauge.dim_p() == 0) {
        // An empty gauge group constrains nothing.
        res.pure_to = (long long)desc.n() + 1;
        res.purity = Purity::pure;
        return res;
    }
    if (auto sw = swt_min(gauge, budget)) res.pure_to = *sw;
    res.purity = classify_purity(res.pure_to, desc.d());
    return res;
}

/*
 * Perfect-code test: a pure code with exact d attains the Hamming bound iff
 *   K * R * sum_{j=0}^{floor((d-1)/2)} C(n,j) (q^2-1)^j = q^n,
 * the sphere-packing identity of the associated [[n, k+r, d]] stabilizer
 * code.  Exact big-integer arithmetic throughout.
 */
inline bool hamming_perfect_check(const SubsystemDescriptor& s) {
    if (s.purity() != Purity::pure)
        throw std::invalid_argument("hamming_perfect_check(): requires an established pure code");
    if (!s.d().is_exact())
        throw std::invalid_argument("hamming_perfect_check(): requires an exact distance");
    const bigint q = s.q();
    bigint ball = 0;
    const long long t = (s.d().value - 1) / 2;
    for (long long j = 0; j <= t; ++j) {
        bigint term = detail::binomial(s.n(), std::uint64_t(j));
        for (long long i = 0; i < j; ++i) term *= q * q - 1;
        ball += term;
    }
    bigint qn = 1;
    for (std::uint32_t i = 0; i < s.n(); ++i) qn *= q;
    return s.K().value() * s.R().value() * ball == qn;
}

}  // namespace subsys
