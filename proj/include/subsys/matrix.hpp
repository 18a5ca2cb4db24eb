#pragma once
#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsys/galois.hpp"

// Dense row-major matrices over a FieldSpec.  Just enough linear algebra for
// code manipulation: reduced row echelon form, rank, right kernel, row-space
// membership.  Everything is exact.

namespace subsys {

class Mat {
public:
    Mat(const FieldSpec& f, std::size_t rows, std::size_t cols)
        : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Mat identity(const FieldSpec& f, std::size_t n) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const FieldSpec& field() const { return *f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    felt& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    felt at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    const felt* row(std::size_t r) const { return a_.data() + r * cols_; }
    felt* row(std::size_t r) { return a_.data() + r * cols_; }

    std::vector<felt> row_vec(std::size_t r) const {
        return std::vector<felt>(row(r), row(r) + cols_);
    }

    void append_row(const std::vector<felt>& v) {
        if (v.size() != cols_) throw std::invalid_argument("Mat::append_row(): width mismatch");
        a_.insert(a_.end(), v.begin(), v.end());
        ++rows_;
    }

    static Mat vstack(const Mat& a, const Mat& b) {
        if (&a.field() != &b.field() || a.cols() != b.cols())
            throw std::invalid_argument("Mat::vstack(): incompatible operands");
        Mat r(a.field(), a.rows() + b.rows(), a.cols());
        std::copy(a.a_.begin(), a.a_.end(), r.a_.begin());
        std::copy(b.a_.begin(), b.a_.end(), r.a_.begin() + std::ptrdiff_t(a.a_.size()));
        return r;
    }

    // In-place reduced row echelon form; returns the pivot column of each
    // nonzero row, in order.  Zero rows sink to the bottom.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t sel = r;
            while (sel < rows_ && at(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            felt piv_inv = f_->inv(at(r, c));
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = f_->mul(at(r, j), piv_inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                felt factor = at(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    at(i, j) = f_->sub(at(i, j), f_->mul(factor, at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    // Drops all-zero rows (use after rref to get a canonical basis).
    void prune_zero_rows() {
        std::size_t w = 0;
        for (std::size_t r = 0; r < rows_; ++r) {
            bool nz = false;
            for (std::size_t c = 0; c < cols_; ++c)
                if (at(r, c) != 0) { nz = true; break; }
            if (nz) {
                if (w != r)
                    std::copy(row(r), row(r) + cols_, a_.begin() + std::ptrdiff_t(w * cols_));
                ++w;
            }
        }
        rows_ = w;
        a_.resize(rows_ * cols_);
    }

    std::size_t rank() const {
        Mat c = *this;
        return c.rref().size();
    }

    // Basis of the right kernel {v : M v = 0}, rows of the result, in RREF.
    Mat kernel() const {
        Mat red = *this;
        auto pivots = red.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        Mat ker(*f_, cols_ - pivots.size(), cols_);
        std::size_t kr = 0;
        for (std::size_t fc = 0; fc < cols_; ++fc) {
            if (is_pivot[fc]) continue;
            ker.at(kr, fc) = 1;
            for (std::size_t pr = 0; pr < pivots.size(); ++pr)
                ker.at(kr, pivots[pr]) = f_->neg(red.at(pr, fc));
            ++kr;
        }
        ker.rref(); // free columns make it echelon already, but normalize anyway
        ker.prune_zero_rows();
        return ker;
    }

    // Requires *this in RREF with given pivots. True if v lies in the row space.
    bool reduces_to_zero(std::vector<felt> v, const std::vector<std::size_t>& pivots) const {
        if (v.size() != cols_) throw std::invalid_argument("Mat::reduces_to_zero(): width mismatch");
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            felt coef = v[pivots[r]];
            if (coef == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) v[j] = f_->sub(v[j], f_->mul(coef, at(r, j)));
        }
        for (felt x : v)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    const FieldSpec* f_;
    std::size_t rows_, cols_;
    std::vector<felt> a_;
};

} // namespace subsys
