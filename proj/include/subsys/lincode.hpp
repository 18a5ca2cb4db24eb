#pragma once
#include <optional>
#include <stdexcept>
#include <vector>

#include "subsys/cyclotomic.hpp"
#include "subsys/enumeration.hpp"
#include "subsys/matrix.hpp"
#include "subsys/weights.hpp"

// Linear codes over GF(q) with a canonical reduced-row-echelon generator
// matrix, the subcode lattice (sum, intersection, containment), Euclidean and
// Hermitian duals, and exact minimum-weight computation.
//
// Weight enumeration picks the cheaper of two exact routes:
//   - walk the code's own message space (q^k words), or
//   - walk the dual's message space (q^(n-k) words) and MacWilliams-transform
//     the histogram back.
// If neither side fits the step budget the caller gets nullopt and must fall
// back to structural lower bounds; nothing is ever sampled or approximated.

namespace subsys {

class LinearCode {
public:
    LinearCode(const FieldSpec& f, int n, const Mat& generators)
        : f_(&f), n_(n), gen_(canonicalize(f, n, generators)) {
        pivots_ = gen_.rref(); // already reduced; recomputing pivots is cheap and keeps them in sync
    }

    static LinearCode zero_code(const FieldSpec& f, int n) { return LinearCode(f, n, Mat(f, 0, std::size_t(n))); }

    static LinearCode full_space(const FieldSpec& f, int n) {
        return LinearCode(f, n, Mat::identity(f, std::size_t(n)));
    }

    static LinearCode from_generators(const FieldSpec& f, int n,
                                      const std::vector<std::vector<felt>>& rows) {
        Mat m(f, rows.size(), std::size_t(n));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (int(rows[r].size()) != n)
                throw std::invalid_argument("LinearCode::from_generators(): row width mismatch");
            for (int c = 0; c < n; ++c) m.at(r, std::size_t(c)) = rows[r][std::size_t(c)];
        }
        return LinearCode(f, n, m);
    }

    // Basis = cyclic shifts x^i g(x), i = 0..k-1, of the generator polynomial.
    static LinearCode from_cyclic(const CyclicCode& c) {
        const FieldSpec& f = field_of_order(c.q());
        Poly g = generator_poly(c);
        int k = c.dim();
        Mat m(f, std::size_t(k), std::size_t(c.n()));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j <= g.degree(); ++j)
                m.at(std::size_t(i), std::size_t(i + j)) = g.coeff(std::size_t(j));
        return LinearCode(f, c.n(), m);
    }

    const FieldSpec& field() const { return *f_; }
    int n() const { return n_; }
    int k() const { return int(gen_.rows()); }
    const Mat& generator() const { return gen_; }

    bool contains_word(const std::vector<felt>& v) const {
        return gen_.reduces_to_zero(v, pivots_);
    }
    bool contains(const LinearCode& sub) const {
        same_space(sub);
        for (std::size_t r = 0; r < sub.gen_.rows(); ++r)
            if (!contains_word(sub.gen_.row_vec(r))) return false;
        return true;
    }

    LinearCode sum(const LinearCode& o) const {
        same_space(o);
        return LinearCode(*f_, n_, Mat::vstack(gen_, o.gen_));
    }
    LinearCode intersect(const LinearCode& o) const {
        same_space(o);
        return dual_of(dual_of(*this).sum(dual_of(o)));
    }

    std::vector<felt> codeword(const std::vector<felt>& msg) const {
        if (int(msg.size()) != k()) throw std::invalid_argument("LinearCode::codeword(): message length != k");
        std::vector<felt> w(std::size_t(n_), 0);
        for (std::size_t r = 0; r < gen_.rows(); ++r) {
            if (msg[r] == 0) continue;
            for (std::size_t c = 0; c < std::size_t(n_); ++c)
                w[c] = f_->add(w[c], f_->mul(msg[r], gen_.at(r, c)));
        }
        return w;
    }

    // Coordinate-wise Frobenius image {(c_i^s)}: a linear code with the same
    // weight distribution.  s defaults to sqrt(q) conjugation.
    LinearCode conjugate() const {
        Mat m = gen_;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = f_->conj_sqrt(m.at(r, c));
        return LinearCode(*f_, n_, m);
    }

    // Exact weight distribution (counts for all q^k codewords), or nullopt if
    // both the code and its dual exceed the enumeration budget.
    std::optional<WeightDist> weight_distribution(const EnumBudget& budget = EnumBudget::from_env()) const {
        if (auto h = hamming_distribution(gen_, budget)) return widen(*h);
        LinearCode d = dual_of(*this);
        if (auto h = hamming_distribution(d.gen_, budget))
            return macwilliams_transform(widen(*h), n_, f_->q());
        return std::nullopt;
    }

    // Exact minimum Hamming weight; requires k >= 1.
    std::optional<int> min_weight(const EnumBudget& budget = EnumBudget::from_env()) const {
        if (k() < 1) throw std::domain_error("LinearCode::min_weight(): zero code has no nonzero word");
        auto wd = weight_distribution(budget);
        if (!wd) return std::nullopt;
        auto mw = min_positive_weight(*wd);
        if (!mw) throw std::logic_error("LinearCode::min_weight(): distribution reports no nonzero word");
        return mw;
    }

    // Exact min weight over this \ sub for a proper subcode (sub may be the
    // zero code).  Histograms of the two codes are computed independently and
    // subtracted, so the cost is the cheaper enumeration side of each.
    std::optional<int> coset_min_weight(const LinearCode& sub,
                                        const EnumBudget& budget = EnumBudget::from_env()) const {
        same_space(sub);
        if (!contains(sub))
            throw std::invalid_argument("LinearCode::coset_min_weight(): argument is not a subcode");
        if (sub.k() >= k())
            throw std::invalid_argument("LinearCode::coset_min_weight(): subcode must be proper");
        auto wa = weight_distribution(budget);
        if (!wa) return std::nullopt;
        auto wb = sub.weight_distribution(budget);
        if (!wb) return std::nullopt;
        auto diff = dist_subtract(*wa, *wb);
        auto mw = min_positive_weight(diff);
        if (!mw) throw std::logic_error("LinearCode::coset_min_weight(): difference set is empty");
        return mw;
    }

    friend LinearCode dual_of(const LinearCode& c) {
        return LinearCode(*c.f_, c.n_, c.gen_.kernel());
    }
    // Hermitian dual over GF(q) with q square: dual of the conjugated code.
    friend LinearCode hermitian_dual_of(const LinearCode& c) {
        return dual_of(c.conjugate());
    }

    bool operator==(const LinearCode& o) const {
        return f_ == o.f_ && n_ == o.n_ && gen_ == o.gen_;
    }
    bool operator!=(const LinearCode& o) const { return !(*this == o); }

private:
    static Mat canonicalize(const FieldSpec& f, int n, Mat m) {
        if (n < 1) throw std::invalid_argument("LinearCode: length must be positive");
        if (int(m.cols()) != n) throw std::invalid_argument("LinearCode: generator width != n");
        if (&m.field() != &f) throw std::invalid_argument("LinearCode: generator field mismatch");
        m.rref();
        m.prune_zero_rows();
        return m;
    }
    void same_space(const LinearCode& o) const {
        if (f_ != o.f_ || n_ != o.n_)
            throw std::invalid_argument("LinearCode: operands live in different spaces");
    }

    const FieldSpec* f_;
    int n_;
    Mat gen_;
    std::vector<std::size_t> pivots_;
};

} // namespace subsys
