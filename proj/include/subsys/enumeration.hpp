#pragma once
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "subsys/matrix.hpp"

// Exhaustive weight-distribution enumeration.
//
// All q^k words spanned by a generator matrix are visited with a loopless
// reflected mixed-radix Gray walk (one digit changes by +-1 per step), so
// each step costs one row addition.  Weights go into a histogram; histograms
// are order-independent, which lets the message space split into blocks by
// the value of the top digit and run on several threads.
//
// Engines:
//   - GF(2) rows bit-packed, 64 coordinates per word
//   - GF(4) rows packed two bits per symbol (characteristic 2, add is XOR)
//   - generic GF(q) rows as symbol arrays with incremental weight updates
//   - symplectic pairs over the prime subfield, coordinate digits
//     interleaved so a position's a- and b-digits sit in one group; weight
//     counts nonzero groups

namespace subsys {

struct EnumBudget {
    std::uint64_t max_steps = std::uint64_t(1) << 32;

    static EnumBudget from_env() {
        EnumBudget b;
        if (const char* s = std::getenv("SUBSYS_MAX_ENUM")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) b.max_steps = v;
        }
        return b;
    }
};

// radix^k if it fits in uint64 and the budget, otherwise nullopt.
inline std::optional<std::uint64_t> space_size(std::uint64_t radix, std::uint32_t k,
                                               std::uint64_t budget) {
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (s > budget / radix) return std::nullopt;
        s *= radix;
    }
    if (s > budget) return std::nullopt;
    return s;
}

namespace detail {

// Loopless reflected mixed-radix Gray generation (Knuth 7.2.1.1, Algorithm H,
// uniform radix).  Calls visit() for the initial all-zero tuple and then
// step(j, from, to) + visit() for every transition.
template <class StepFn, class VisitFn>
void gray_walk(std::uint32_t radix, std::uint32_t k, StepFn&& step, VisitFn&& visit) {
    visit();
    if (k == 0 || radix < 2) return;
    std::vector<std::uint32_t> a(k, 0), f(k + 1);
    std::vector<std::int8_t> d(k, 1);
    std::iota(f.begin(), f.end(), 0);
    for (;;) {
        std::uint32_t j = f[0];
        f[0] = 0;
        if (j == k) break;
        std::uint32_t from = a[j];
        a[j] = std::uint32_t(std::int64_t(a[j]) + d[j]);
        step(j, from, a[j]);
        visit();
        if (a[j] == 0 || a[j] == radix - 1) {
            d[j] = std::int8_t(-d[j]);
            f[j] = f[j + 1];
            f[j + 1] = j + 1;
        }
    }
}

inline unsigned thread_count() {
    if (const char* s = std::getenv("SUBSYS_THREADS")) {
        long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs the Gray walk over k digits of the given radix, splitting the top
// digit's values across threads.  Engine must provide apply(j, from, to),
// weight(), and be copyable.  Returns a histogram indexed by weight.
template <class Engine>
std::vector<std::uint64_t> histogram_walk(Engine base, std::uint32_t radix, std::uint32_t k,
                                          std::size_t max_weight) {
    std::vector<std::uint64_t> hist(max_weight + 1, 0);
    if (k == 0) {
        hist[base.weight()]++;
        return hist;
    }
    unsigned want = thread_count();
    if (want <= 1 || k < 2 || radix < 2) {
        gray_walk(radix, k,
                  [&](std::uint32_t j, std::uint32_t from, std::uint32_t to) { base.apply(j, from, to); },
                  [&]() { hist[base.weight()]++; });
        return hist;
    }
    unsigned nthreads = std::min<unsigned>(want, radix);
    std::vector<std::vector<std::uint64_t>> parts(nthreads, hist);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            Engine eng = base;
            std::uint32_t top = k - 1;
            std::uint32_t cur_top = 0;
            auto& h = parts[t];
            for (std::uint32_t v = t; v < radix; v += nthreads) {
                while (cur_top < v) { eng.apply(top, cur_top, cur_top + 1); ++cur_top; }
                gray_walk(radix, top,
                          [&](std::uint32_t j, std::uint32_t from, std::uint32_t to) { eng.apply(j, from, to); },
                          [&]() { h[eng.weight()]++; });
                // the sub-walk ends back at the all-zero sub-tuple (reflected
                // Gray walks close only for even visit counts), so reset by
                // replaying: cheaper to rebuild from a fresh copy
                eng = base;
                cur_top = 0;
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& part : parts)
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += part[i];
    return hist;
}

// ---- engines ----

class PackedBinaryEngine {
public:
    PackedBinaryEngine(const Mat& gen) : words_((gen.cols() + 63) / 64), cur_(words_, 0) {
        rows_.resize(gen.rows(), std::vector<std::uint64_t>(words_, 0));
        for (std::size_t r = 0; r < gen.rows(); ++r)
            for (std::size_t c = 0; c < gen.cols(); ++c)
                if (gen.at(r, c)) rows_[r][c / 64] |= std::uint64_t(1) << (c % 64);
        wt_ = 0;
    }
    void apply(std::uint32_t j, std::uint32_t, std::uint32_t) {
        int w = 0;
        for (std::size_t i = 0; i < words_; ++i) {
            cur_[i] ^= rows_[j][i];
            w += std::popcount(cur_[i]);
        }
        wt_ = w;
    }
    int weight() const { return wt_; }

private:
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint64_t> cur_;
    int wt_;
};

// GF(4) symbols packed two bits each; a digit step from value u to v adds
// (v - u) = (v XOR u) times the row, and all three nonzero multiples are
// precomputed.
class PackedQuaternaryEngine {
public:
    PackedQuaternaryEngine(const Mat& gen) : n_(gen.cols()), words_((n_ * 2 + 63) / 64) {
        const FieldSpec& f = gen.field();
        rows_.resize(gen.rows());
        for (std::size_t r = 0; r < gen.rows(); ++r)
            for (felt d = 1; d < 4; ++d) {
                std::vector<std::uint64_t> packed(words_, 0);
                for (std::size_t c = 0; c < n_; ++c) {
                    std::uint64_t sym = f.mul(d, gen.at(r, c));
                    packed[(c * 2) / 64] |= sym << ((c * 2) % 64);
                }
                rows_[r][d - 1] = std::move(packed);
            }
        cur_.assign(words_, 0);
        wt_ = 0;
    }
    void apply(std::uint32_t j, std::uint32_t from, std::uint32_t to) {
        const auto& row = rows_[j][(from ^ to) - 1];
        int w = 0;
        for (std::size_t i = 0; i < words_; ++i) {
            cur_[i] ^= row[i];
            std::uint64_t x = cur_[i];
            x = (x | (x >> 1)) & 0x5555555555555555ull;
            w += std::popcount(x);
        }
        wt_ = w;
    }
    int weight() const { return wt_; }

private:
    std::size_t n_, words_;
    std::vector<std::array<std::vector<std::uint64_t>, 3>> rows_;
    std::vector<std::uint64_t> cur_;
    int wt_;
};

class GenericHammingEngine {
public:
    GenericHammingEngine(const Mat& gen) : f_(&gen.field()), cur_(gen.cols(), 0), wt_(0) {
        std::uint32_t q = f_->q();
        rows_.resize(gen.rows());
        for (std::size_t r = 0; r < gen.rows(); ++r) {
            rows_[r].resize(q - 1);
            for (felt d = 1; d < q; ++d) {
                auto& supp = rows_[r][d - 1];
                for (std::size_t c = 0; c < gen.cols(); ++c) {
                    felt v = f_->mul(d, gen.at(r, c));
                    if (v) supp.emplace_back(std::uint32_t(c), v);
                }
            }
        }
        // digit transitions move by +-1 in element value; the field delta
        // depends on the starting value, so tabulate both directions
        delta_up_.resize(q);
        delta_down_.resize(q);
        for (std::uint32_t v = 0; v < q; ++v) {
            if (v + 1 < q) delta_up_[v] = f_->sub(felt(v + 1), felt(v));
            if (v > 0) delta_down_[v] = f_->sub(felt(v - 1), felt(v));
        }
    }
    void apply(std::uint32_t j, std::uint32_t from, std::uint32_t to) {
        felt d = (to > from) ? delta_up_[from] : delta_down_[from];
        for (auto [c, v] : rows_[j][d - 1]) {
            felt old = cur_[c];
            felt nw = f_->add(old, v);
            cur_[c] = nw;
            wt_ += int(nw != 0) - int(old != 0);
        }
    }
    int weight() const { return wt_; }

private:
    const FieldSpec* f_;
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, felt>>>> rows_;
    std::vector<felt> cur_;
    std::vector<felt> delta_up_, delta_down_;
    int wt_;
};

// Symplectic weight over packed prime-field digits, characteristic 2.
// Columns are interleaved per position: group_bits = 2m bits of a- and
// b-digits for one position; a position counts once when any bit is set.
template <int GROUP_BITS>
class PackedSympEngine {
    static_assert(GROUP_BITS == 2 || GROUP_BITS == 4, "supported groups: q=2 (2 bits), q=4 (4 bits)");

public:
    PackedSympEngine(const Mat& basis /* over GF(2), cols = n * GROUP_BITS */)
        : words_((basis.cols() + 63) / 64), cur_(words_, 0), wt_(0) {
        rows_.resize(basis.rows(), std::vector<std::uint64_t>(words_, 0));
        for (std::size_t r = 0; r < basis.rows(); ++r)
            for (std::size_t c = 0; c < basis.cols(); ++c)
                if (basis.at(r, c)) rows_[r][c / 64] |= std::uint64_t(1) << (c % 64);
    }
    void apply(std::uint32_t j, std::uint32_t, std::uint32_t) {
        int w = 0;
        for (std::size_t i = 0; i < words_; ++i) {
            cur_[i] ^= rows_[j][i];
            std::uint64_t x = cur_[i];
            if constexpr (GROUP_BITS == 2) {
                x = (x | (x >> 1)) & 0x5555555555555555ull;
            } else {
                x = (x | (x >> 2));
                x = (x | (x >> 1)) & 0x1111111111111111ull;
            }
            w += std::popcount(x);
        }
        wt_ = w;
    }
    int weight() const { return wt_; }

private:
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint64_t> cur_;
    int wt_;
};

// Generic symplectic engine: prime-field digit vectors with a per-position
// count of nonzero digits; weight is the number of positions whose count is
// positive.
class GenericSympEngine {
public:
    GenericSympEngine(const Mat& basis, std::uint32_t group_digits)
        : p_(basis.field().p()), g_(group_digits), cur_(basis.cols(), 0),
          grp_(basis.cols() / group_digits, 0), wt_(0) {
        const FieldSpec& fp = basis.field();
        if (basis.cols() % group_digits != 0)
            throw std::invalid_argument("GenericSympEngine: column count not a multiple of the group size");
        rows_.resize(basis.rows());
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            rows_[r].resize(p_ - 1);
            for (felt d = 1; d < p_; ++d) {
                auto& supp = rows_[r][d - 1];
                for (std::size_t c = 0; c < basis.cols(); ++c) {
                    felt v = fp.mul(d, basis.at(r, c));
                    if (v) supp.emplace_back(std::uint32_t(c), std::uint8_t(v));
                }
            }
        }
    }
    void apply(std::uint32_t j, std::uint32_t from, std::uint32_t to) {
        // prime field: element values are residues, delta = to - from mod p
        std::uint32_t d = (to + p_ - from) % p_;
        for (auto [c, v] : rows_[j][d - 1]) {
            std::uint8_t old = cur_[c];
            std::uint8_t nw = std::uint8_t((old + v) % p_);
            cur_[c] = nw;
            std::uint32_t grp = c / g_;
            if (old == 0 && nw != 0) { if (grp_[grp]++ == 0) ++wt_; }
            else if (old != 0 && nw == 0) { if (--grp_[grp] == 0) --wt_; }
        }
    }
    int weight() const { return wt_; }

private:
    std::uint32_t p_, g_;
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>>> rows_;
    std::vector<std::uint8_t> cur_;
    std::vector<std::uint8_t> grp_;
    int wt_;
};

} // namespace detail

// Hamming weight histogram of the row space of gen (all q^rows words,
// including zero).  nullopt when q^rows exceeds the budget.
inline std::optional<std::vector<std::uint64_t>> hamming_distribution(const Mat& gen,
                                                                      const EnumBudget& budget) {
    const FieldSpec& f = gen.field();
    auto steps = space_size(f.q(), std::uint32_t(gen.rows()), budget.max_steps);
    if (!steps) return std::nullopt;
    std::uint32_t k = std::uint32_t(gen.rows());
    if (f.q() == 2)
        return detail::histogram_walk(detail::PackedBinaryEngine(gen), 2, k, gen.cols());
    if (f.q() == 4)
        return detail::histogram_walk(detail::PackedQuaternaryEngine(gen), 4, k, gen.cols());
    return detail::histogram_walk(detail::GenericHammingEngine(gen), f.q(), k, gen.cols());
}

// Symplectic weight histogram over the F_p row space of an interleaved
// digit-expansion basis; group_digits = 2m digits per position.
inline std::optional<std::vector<std::uint64_t>> symplectic_distribution(const Mat& basis,
                                                                         std::uint32_t group_digits,
                                                                         const EnumBudget& budget) {
    const FieldSpec& fp = basis.field();
    auto steps = space_size(fp.q(), std::uint32_t(basis.rows()), budget.max_steps);
    if (!steps) return std::nullopt;
    std::uint32_t k = std::uint32_t(basis.rows());
    std::size_t n = basis.cols() / group_digits;
    if (fp.p() == 2 && group_digits == 2)
        return detail::histogram_walk(detail::PackedSympEngine<2>(basis), 2, k, n);
    if (fp.p() == 2 && group_digits == 4)
        return detail::histogram_walk(detail::PackedSympEngine<4>(basis), 2, k, n);
    return detail::histogram_walk(detail::GenericSympEngine(basis, group_digits), fp.p(), k, n);
}

} // namespace subsys
