#pragma once
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subsys/enumeration.hpp"
#include "subsys/lincode.hpp"
#include "subsys/matrix.hpp"
#include "subsys/weights.hpp"

// Additive (F_p-linear) codes inside GF(q)^(2n) carrying the trace-symplectic
// form, symplectic weight enumeration, duals, hyperbolic decompositions, and
// the expansion of Hermitian codes over GF(q^2) into this geometry.
//
// A vector is a pair (a|b) of length-n halves over GF(q), q = p^m.  For linear
// algebra every GF(q) coordinate expands into its m base-p digits, giving a
// 2nm-column matrix over GF(p); digit columns are grouped per position
// (a_i's digits, then b_i's digits), so one position = 2m adjacent columns.

namespace subsys {

struct SympVector {
    const FieldSpec* f = nullptr; // GF(q)
    std::vector<felt> a, b;       // each length n

    SympVector() = default;
    SympVector(const FieldSpec& field, std::vector<felt> av, std::vector<felt> bv)
        : f(&field), a(std::move(av)), b(std::move(bv)) {
        if (a.size() != b.size())
            throw std::invalid_argument("SympVector: halves differ in length");
        for (felt x : a)
            if (x >= f->q()) throw std::out_of_range("SympVector: a-value outside field");
        for (felt x : b)
            if (x >= f->q()) throw std::out_of_range("SympVector: b-value outside field");
    }
    static SympVector zero(const FieldSpec& field, int n) {
        return SympVector(field, std::vector<felt>(std::size_t(n), 0),
                          std::vector<felt>(std::size_t(n), 0));
    }

    int n() const { return int(a.size()); }
    bool is_zero() const {
        auto nz = [](felt x) { return x != 0; };
        return !std::any_of(a.begin(), a.end(), nz) && !std::any_of(b.begin(), b.end(), nz);
    }
    bool operator==(const SympVector& o) const { return f == o.f && a == o.a && b == o.b; }
    bool operator!=(const SympVector& o) const { return !(*this == o); }
};

namespace detail {
inline void same_ambient(const SympVector& u, const SympVector& v) {
    if (u.f != v.f || u.a.size() != v.a.size())
        throw std::invalid_argument("SympVector: operands live in different ambients");
}
} // namespace detail

// Symplectic weight: positions where (a_i, b_i) != (0, 0).
inline int swt(const SympVector& v) {
    int w = 0;
    for (std::size_t i = 0; i < v.a.size(); ++i)
        if (v.a[i] != 0 || v.b[i] != 0) ++w;
    return w;
}

// Trace-symplectic form <u|v>_s = tr_{q/p}(a'.b - a.b') for u=(a|b), v=(a'|b').
// Returns a prime-field digit; the form is F_p-bilinear and alternating.
inline std::uint8_t tsp(const SympVector& u, const SympVector& v) {
    detail::same_ambient(u, v);
    const FieldSpec& f = *u.f;
    felt acc = 0;
    for (std::size_t i = 0; i < u.a.size(); ++i)
        acc = f.add(acc, f.sub(f.mul(v.a[i], u.b[i]), f.mul(u.a[i], v.b[i])));
    return f.trace_to_prime(acc);
}

inline SympVector symp_add(const SympVector& u, const SympVector& v) {
    detail::same_ambient(u, v);
    SympVector r = u;
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        r.a[i] = u.f->add(r.a[i], v.a[i]);
        r.b[i] = u.f->add(r.b[i], v.b[i]);
    }
    return r;
}

// Multiply every coordinate by the field scalar s (s in GF(q); prime-field
// digits 0..p-1 are their own field values, so F_p scaling is the same call).
inline SympVector symp_scale(const SympVector& u, felt s) {
    SympVector r = u;
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        r.a[i] = u.f->mul(s, r.a[i]);
        r.b[i] = u.f->mul(s, r.b[i]);
    }
    return r;
}

// r = u + c*v with c a prime digit.
inline SympVector symp_axpy(const SympVector& u, std::uint8_t c, const SympVector& v) {
    return symp_add(u, symp_scale(v, felt(c)));
}

class AdditiveCode {
public:
    // basis: matrix over GF(p) with 2nm columns in the per-position digit
    // layout; rows get reduced to a canonical RREF basis.
    AdditiveCode(const FieldSpec& f, int n, Mat basis)
        : f_(&f), fp_(&FieldSpec::get(f.p(), 1)), n_(n), basis_(std::move(basis)) {
        if (n_ < 1) throw std::invalid_argument("AdditiveCode: length must be positive");
        if (&basis_.field() != fp_)
            throw std::invalid_argument("AdditiveCode: basis must be over the prime field");
        if (basis_.cols() != cols())
            throw std::invalid_argument("AdditiveCode: basis width must be 2*n*m");
        basis_.rref();
        basis_.prune_zero_rows();
        pivots_ = basis_.rref();
    }

    static AdditiveCode zero(const FieldSpec& f, int n) {
        return AdditiveCode(f, n, Mat(FieldSpec::get(f.p(), 1), 0, std::size_t(2 * n) * f.m()));
    }
    static AdditiveCode full(const FieldSpec& f, int n) {
        return AdditiveCode(f, n, Mat::identity(FieldSpec::get(f.p(), 1), std::size_t(2 * n) * f.m()));
    }
    static AdditiveCode from_vectors(const FieldSpec& f, int n,
                                     const std::vector<SympVector>& gens) {
        Mat m(FieldSpec::get(f.p(), 1), gens.size(), std::size_t(2 * n) * f.m());
        for (std::size_t r = 0; r < gens.size(); ++r) {
            if (gens[r].f != &f || gens[r].n() != n)
                throw std::invalid_argument("AdditiveCode::from_vectors(): generator ambient mismatch");
            auto row = expand(gens[r]);
            for (std::size_t c = 0; c < row.size(); ++c) m.at(r, c) = row[c];
        }
        return AdditiveCode(f, n, std::move(m));
    }

    const FieldSpec& field() const { return *f_; }
    const FieldSpec& prime_field() const { return *fp_; }
    int n() const { return n_; }
    int dim_p() const { return int(basis_.rows()); }
    std::uint32_t group_digits() const { return 2 * f_->m(); }
    std::size_t cols() const { return std::size_t(2 * n_) * f_->m(); }
    const Mat& prime_basis() const { return basis_; }

    bigint size() const {
        bigint s = 1;
        for (int i = 0; i < dim_p(); ++i) s *= f_->p();
        return s;
    }

    // Digit expansion: position i occupies columns [2mi, 2m(i+1)), a-half first.
    static std::vector<felt> expand(const SympVector& v) {
        const FieldSpec& f = *v.f;
        std::uint32_t m = f.m();
        std::vector<felt> row(std::size_t(2 * v.n()) * m);
        for (int i = 0; i < v.n(); ++i)
            for (std::uint32_t j = 0; j < m; ++j) {
                row[std::size_t(i) * 2 * m + j] = f.digit(v.a[std::size_t(i)], j);
                row[std::size_t(i) * 2 * m + m + j] = f.digit(v.b[std::size_t(i)], j);
            }
        return row;
    }
    SympVector collapse(const std::vector<felt>& row) const {
        std::uint32_t m = f_->m();
        if (row.size() != cols()) throw std::invalid_argument("AdditiveCode::collapse(): width mismatch");
        std::size_t len = std::size_t(n_);
        std::vector<felt> a(len), b(len);
        std::vector<std::uint8_t> d(m);
        for (int i = 0; i < n_; ++i) {
            for (std::uint32_t j = 0; j < m; ++j) d[j] = std::uint8_t(row[std::size_t(i) * 2 * m + j]);
            a[std::size_t(i)] = f_->from_digits(d.data());
            for (std::uint32_t j = 0; j < m; ++j)
                d[j] = std::uint8_t(row[std::size_t(i) * 2 * m + m + j]);
            b[std::size_t(i)] = f_->from_digits(d.data());
        }
        return SympVector(*f_, std::move(a), std::move(b));
    }

    std::vector<SympVector> gens() const {
        std::vector<SympVector> g;
        g.reserve(basis_.rows());
        for (std::size_t r = 0; r < basis_.rows(); ++r) g.push_back(collapse(basis_.row_vec(r)));
        return g;
    }

    bool contains(const SympVector& v) const {
        if (v.f != f_ || v.n() != n_)
            throw std::invalid_argument("AdditiveCode::contains(): ambient mismatch");
        return basis_.reduces_to_zero(expand(v), pivots_);
    }
    bool contains(const AdditiveCode& sub) const {
        same_ambient(sub);
        for (std::size_t r = 0; r < sub.basis_.rows(); ++r)
            if (!basis_.reduces_to_zero(sub.basis_.row_vec(r), pivots_)) return false;
        return true;
    }

    AdditiveCode sum(const AdditiveCode& o) const {
        same_ambient(o);
        return AdditiveCode(*f_, n_, Mat::vstack(basis_, o.basis_));
    }
    AdditiveCode intersect(const AdditiveCode& o) const {
        same_ambient(o);
        // meet via parity checks: A cap B = ker(vstack(H_A, H_B))
        return AdditiveCode(*f_, n_, Mat::vstack(basis_.kernel(), o.basis_.kernel()).kernel());
    }

    // True when the F_p-span is closed under GF(q) scalars.  Closure under one
    // primitive multiplier generates the full field action, so only g is tested.
    bool is_gfq_linear() const {
        if (f_->m() == 1) return true;
        felt g = f_->primitive();
        for (const auto& v : gens())
            if (!contains(symp_scale(v, g))) return false;
        return true;
    }

    bool operator==(const AdditiveCode& o) const {
        return f_ == o.f_ && n_ == o.n_ && basis_ == o.basis_;
    }
    bool operator!=(const AdditiveCode& o) const { return !(*this == o); }

private:
    void same_ambient(const AdditiveCode& o) const {
        if (f_ != o.f_ || n_ != o.n_)
            throw std::invalid_argument("AdditiveCode: operands live in different ambients");
    }
    const FieldSpec* f_;
    const FieldSpec* fp_;
    int n_;
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

// Trace-symplectic dual C^perp_s = {v : tsp(u, v) = 0 for all u in C}.
// Row u of the functional matrix has, at v's a-digit (i,j), the coefficient
// tr(x^j b_i(u)) and at v's b-digit (i,j) the coefficient -tr(x^j a_i(u));
// the kernel of that matrix over GF(p) is the dual's basis.
inline AdditiveCode symp_dual(const AdditiveCode& c) {
    const FieldSpec& f = c.field();
    const FieldSpec& fp = c.prime_field();
    std::uint32_t m = f.m(), p = f.p();
    auto gens = c.gens();
    Mat phi(fp, gens.size(), c.cols());
    for (std::size_t r = 0; r < gens.size(); ++r) {
        const SympVector& u = gens[r];
        for (int i = 0; i < c.n(); ++i)
            for (std::uint32_t j = 0; j < m; ++j) {
                // basis monomial x^j; for m = 1 only j = 0 occurs and x^0 = 1
                felt xj = j == 0 ? felt(1) : f.pow(f.primitive(), j);
                std::uint8_t ca = f.trace_to_prime(f.mul(xj, u.b[std::size_t(i)]));
                std::uint8_t cb = f.trace_to_prime(f.mul(xj, u.a[std::size_t(i)]));
                phi.at(r, std::size_t(i) * 2 * m + j) = felt(ca);
                phi.at(r, std::size_t(i) * 2 * m + m + j) = felt((p - cb) % p);
            }
    }
    return AdditiveCode(f, c.n(), phi.kernel());
}

struct HyperbolicBasis {
    std::vector<SympVector> singles;                       // z_1..z_s, the isotropic part
    std::vector<std::pair<SympVector, SympVector>> pairs;  // (x_k, z_k) with tsp(x_k, z_k) = 1
    int s() const { return int(singles.size()); }
    int r() const { return int(pairs.size()); }
};

// Symplectic Gram-Schmidt over GF(p): peels hyperbolic pairs off the basis in
// input order (first vector, first partner with a nonzero pairing), leaving
// the radical of the restricted form as singles.  The singles therefore span
// D = C cap C^perp_s and dim_p C = s + 2r.
inline HyperbolicBasis symp_gram_schmidt(const AdditiveCode& c) {
    const FieldSpec& fp = c.prime_field();
    std::uint32_t p = fp.p();
    std::vector<SympVector> w = c.gens();
    HyperbolicBasis hb;
    while (!w.empty()) {
        SympVector u = w.front();
        w.erase(w.begin());
        std::size_t pi = w.size();
        std::uint8_t cv = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            cv = tsp(u, w[j]);
            if (cv != 0) { pi = j; break; }
        }
        if (pi == w.size()) {
            hb.singles.push_back(std::move(u));
            continue;
        }
        SympVector v = symp_scale(w[pi], fp.inv(felt(cv)));
        w.erase(w.begin() + std::ptrdiff_t(pi));
        for (auto& x : w) {
            std::uint8_t c1 = tsp(x, v), c2 = tsp(x, u);
            // x' = x - c1*u + c2*v is orthogonal to both u and v
            x = symp_axpy(symp_axpy(x, std::uint8_t((p - c1) % p), u), c2, v);
        }
        hb.pairs.emplace_back(std::move(u), std::move(v));
    }
    if (hb.s() + 2 * hb.r() != c.dim_p())
        throw std::logic_error("symp_gram_schmidt(): rank bookkeeping failed");
    return hb;
}

// Expansion of a code X over GF(q^2) into GF(q)^(2n) through the fixed basis
// {1, beta}, beta the primitive element: C = {(u|v) : u + beta v in X}.  The
// map is an F_p-isomorphism onto its image, swt(phi(x)) = wt(x), and it
// intertwines duals: phi(X)^perp_s = phi(X^perp_h).  No self-orthogonality is
// assumed here; herm_to_symp below is the checked variant.
inline AdditiveCode herm_expand(const LinearCode& x) {
    const FieldSpec& big = x.field();
    if (big.m() % 2 != 0)
        throw std::invalid_argument("herm_expand(): code field must be a square extension GF(q^2)");
    std::uint32_t mu = big.m() / 2;
    const FieldSpec& small = FieldSpec::get(big.p(), mu);
    const auto& emb = big.subfield(mu);
    felt beta = big.primitive();

    // decompose every element of GF(q^2) as u + beta*v with u, v in GF(q)
    std::vector<std::pair<felt, felt>> dec(big.q());
    for (std::uint32_t e = 0; e < big.q(); ++e) {
        bool found = false;
        for (std::uint32_t vs = 0; vs < small.q() && !found; ++vs) {
            felt u_img = big.sub(felt(e), big.mul(beta, emb.into_big[vs]));
            std::int32_t us = emb.from_big[u_img];
            if (us >= 0) {
                dec[e] = {felt(us), felt(vs)};
                found = true;
            }
        }
        if (!found) throw std::logic_error("herm_expand(): {1, beta} failed to span GF(q^2)");
    }

    int n = x.n();
    std::vector<SympVector> gens;
    for (int r = 0; r < x.k(); ++r) {
        auto row = x.generator().row_vec(std::size_t(r));
        // multiply by each power of the primitive to get an F_p-spanning set
        felt mult = 1;
        for (std::uint32_t t = 0; t < big.m(); ++t) {
            std::size_t len = std::size_t(n);
            std::vector<felt> a(len), b(len);
            for (int i = 0; i < n; ++i) {
                auto [u, v] = dec[big.mul(mult, row[std::size_t(i)])];
                a[std::size_t(i)] = u;
                b[std::size_t(i)] = v;
            }
            gens.emplace_back(small, std::move(a), std::move(b));
            mult = big.mul(mult, beta);
        }
    }
    AdditiveCode c = AdditiveCode::from_vectors(small, n, gens);
    if (c.dim_p() != int(x.k() * big.m()))
        throw std::logic_error("herm_expand(): expansion lost rank");
    return c;
}

// Checked expansion: requires X Hermitian self-orthogonal, so the image is
// trace-symplectic self-orthogonal.
inline AdditiveCode herm_to_symp(const LinearCode& x) {
    if (x.k() > 0 && !hermitian_dual_of(x).contains(x))
        throw std::invalid_argument("herm_to_symp(): code is not Hermitian self-orthogonal");
    return herm_expand(x);
}

// Exact symplectic weight distribution: enumerate the cheaper of C and its
// symplectic dual (the positions form an alphabet of size q^2, so MacWilliams
// applies with that alphabet).  nullopt if both sides exceed the budget.
inline std::optional<WeightDist> swt_distribution(const AdditiveCode& c,
                                                  const EnumBudget& budget = EnumBudget::from_env()) {
    if (auto h = symplectic_distribution(c.prime_basis(), c.group_digits(), budget))
        return widen(*h);
    AdditiveCode d = symp_dual(c);
    if (auto h = symplectic_distribution(d.prime_basis(), d.group_digits(), budget))
        return macwilliams_transform(widen(*h), c.n(), c.field().q() * c.field().q());
    return std::nullopt;
}

// Exact swt(C) = minimum symplectic weight of a nonzero element.
inline std::optional<int> swt_min(const AdditiveCode& c,
                                  const EnumBudget& budget = EnumBudget::from_env()) {
    if (c.dim_p() < 1) throw std::domain_error("swt_min(): zero code has no nonzero element");
    auto wd = swt_distribution(c, budget);
    if (!wd) return std::nullopt;
    auto mw = min_positive_weight(*wd);
    if (!mw) throw std::logic_error("swt_min(): distribution reports no nonzero element");
    return mw;
}

// Exact swt(A - B) = min symplectic weight over the set difference, B a
// proper subcode of A; histograms are computed per side and subtracted.
inline std::optional<int> swt_coset_min(const AdditiveCode& a, const AdditiveCode& b,
                                        const EnumBudget& budget = EnumBudget::from_env()) {
    if (!a.contains(b))
        throw std::invalid_argument("swt_coset_min(): second argument is not a subcode");
    if (b.dim_p() >= a.dim_p())
        throw std::invalid_argument("swt_coset_min(): subcode must be proper");
    auto wa = swt_distribution(a, budget);
    if (!wa) return std::nullopt;
    auto wb = swt_distribution(b, budget);
    if (!wb) return std::nullopt;
    auto mw = min_positive_weight(dist_subtract(*wa, *wb));
    if (!mw) throw std::logic_error("swt_coset_min(): difference set is empty");
    return mw;
}

} // namespace subsys
