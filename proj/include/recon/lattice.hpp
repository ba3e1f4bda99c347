#pragma once

#include "recon/numeric.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace recon {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return a_.at(r * cols_ + c); }
    const Int& operator()(std::size_t r, std::size_t c) const { return a_.at(r * cols_ + c); }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
        IntMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Int& v) { return v == 0; });
    }

    IntMatrix column(std::size_t j) const {
        IntMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    /// row[i] += f * row[j]
    void add_row(std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += f * (*this)(j, c);
    }
    /// col[i] += f * col[j]
    void add_col(std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += f * (*this)(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
    }
    void negate_col(std::size_t j) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// Determinant by fraction-free (Bareiss) elimination; exact.
inline Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

struct SmithResult {
    IntMatrix u, d, v; // u * a * v == d
};

/// Smith normal form with unimodular transforms.  Pivoting picks the smallest
/// nonzero |entry| in the working submatrix, which keeps growth tame on the
/// small 0/1-heavy matrices this library produces.
inline SmithResult smith_normal_form(const IntMatrix& a) {
    std::size_t rows = a.rows(), cols = a.cols();
    SmithResult res{IntMatrix::identity(rows), a, IntMatrix::identity(cols)};
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    auto abs_lt = [](const Int& x, const Int& y) {
        return boost::multiprecision::abs(x) < boost::multiprecision::abs(y);
    };

    std::size_t k = 0;
    while (k < rows && k < cols) {
        // Locate smallest nonzero pivot candidate.
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j)
                if (d(i, j) != 0 && (!pivot || abs_lt(d(i, j), d(pivot->first, pivot->second))))
                    pivot = {i, j};
        if (!pivot) break;
        if (pivot->first != k) { d.swap_rows(k, pivot->first); u.swap_rows(k, pivot->first); }
        if (pivot->second != k) { d.swap_cols(k, pivot->second); v.swap_cols(k, pivot->second); }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (d(i, k) == 0) continue;
                Int q = d(i, k) / d(k, k);
                if (q != 0) { d.add_row(i, k, -q); u.add_row(i, k, -q); }
                if (d(i, k) != 0) {
                    // Remainder strictly smaller in |.|; swap it up and restart.
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    clean = false;
                }
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (d(k, j) == 0) continue;
                Int q = d(k, j) / d(k, k);
                if (q != 0) { d.add_col(j, k, -q); v.add_col(j, k, -q); }
                if (d(k, j) != 0) {
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    clean = false;
                }
            }
        }
        ++k;
    }

    // Make diagonal non-negative.
    std::size_t diag = std::min(rows, cols);
    for (std::size_t i = 0; i < diag; ++i)
        if (d(i, i) < 0) { d.negate_row(i); u.negate_row(i); }

    // Enforce the divisibility chain d_i | d_{i+1}.
    for (std::size_t i = 0; i + 1 < diag; ++i) {
        for (std::size_t j = i + 1; j < diag; ++j) {
            if (d(i, i) == 0 && d(j, j) != 0) {
                d.swap_rows(i, j); u.swap_rows(i, j);
                d.swap_cols(i, j); v.swap_cols(i, j);
            }
            if (d(i, i) == 0 || d(j, j) % d(i, i) == 0) continue;
            // Fold d(j,j) into row i and redo the 2x2 corner.
            d.add_col(i, j, 1);
            v.add_col(i, j, 1);
            bool clean = false;
            while (!clean) {
                clean = true;
                if (d(j, i) != 0) {
                    Int q = d(j, i) / d(i, i);
                    if (q != 0) { d.add_row(j, i, -q); u.add_row(j, i, -q); }
                    if (d(j, i) != 0) { d.swap_rows(i, j); u.swap_rows(i, j); clean = false; continue; }
                }
                if (d(i, j) != 0) {
                    Int q = d(i, j) / d(i, i);
                    if (q != 0) { d.add_col(j, i, -q); v.add_col(j, i, -q); }
                    if (d(i, j) != 0) { d.swap_cols(i, j); v.swap_cols(i, j); clean = false; }
                }
            }
            if (d(i, i) < 0) { d.negate_row(i); u.negate_row(i); }
            if (d(j, j) < 0) { d.negate_row(j); u.negate_row(j); }
        }
    }

    if (boost::multiprecision::abs(determinant(u)) != 1 ||
        boost::multiprecision::abs(determinant(v)) != 1)
        throw std::logic_error("smith transform lost unimodularity");
    if (!(u * a * v == d)) throw std::logic_error("smith decomposition does not recompose");
    return res;
}

inline std::size_t rank(const IntMatrix& a) {
    auto s = smith_normal_form(a);
    std::size_t r = 0, diag = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < diag; ++i)
        if (s.d(i, i) != 0) ++r;
    return r;
}

/// Column-style Hermite reduction: canonical basis of the column lattice.
/// Pivot rows get positive pivots and entries to the right of a pivot are
/// reduced into [0, pivot).
inline IntMatrix hermite_columns(IntMatrix m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < rows && pivot_col < cols; ++r) {
        // Euclid across columns pivot_col..cols-1 on row r.
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t j = pivot_col; j < cols; ++j)
                if (m(r, j) != 0 &&
                    (!best || boost::multiprecision::abs(m(r, j)) < boost::multiprecision::abs(m(r, *best))))
                    best = j;
            if (!best) break;
            if (*best != pivot_col) m.swap_cols(pivot_col, *best);
            if (m(r, pivot_col) < 0) m.negate_col(pivot_col);
            bool done = true;
            for (std::size_t j = pivot_col + 1; j < cols; ++j) {
                if (m(r, j) == 0) continue;
                Int q = m(r, j) / m(r, pivot_col);
                m.add_col(j, pivot_col, -q);
                if (m(r, j) != 0) done = false;
            }
            if (done) break;
        }
        if (m(r, pivot_col) != 0) {
            // Reduce earlier columns against this pivot.
            for (std::size_t j = 0; j < pivot_col; ++j) {
                Int q = m(r, j) / m(r, pivot_col);
                if (m(r, j) - q * m(r, pivot_col) < 0) q -= 1;
                if (q != 0) m.add_col(j, pivot_col, -q);
            }
            ++pivot_col;
        }
    }
    // Drop zero columns, keep pivot columns in order.
    IntMatrix out(rows, pivot_col);
    for (std::size_t j = 0; j < pivot_col; ++j)
        for (std::size_t i = 0; i < rows; ++i) out(i, j) = m(i, j);
    return out;
}

/// Basis of the integer kernel of A, columns Hermite-reduced for determinism.
/// The Smith decomposition certifies the span: A*V has zero columns exactly at
/// the kernel coordinates, so those columns of V span ker over the integers.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    auto s = smith_normal_form(a);
    std::size_t diag = std::min(a.rows(), a.cols());
    std::vector<std::size_t> kernel_cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (j >= diag || s.d(j, j) == 0) kernel_cols.push_back(j);
    IntMatrix k(a.cols(), kernel_cols.size());
    for (std::size_t idx = 0; idx < kernel_cols.size(); ++idx)
        for (std::size_t i = 0; i < a.cols(); ++i) k(i, idx) = s.v(i, kernel_cols[idx]);
    k = hermite_columns(k);
    if (!(a * k).is_zero()) throw std::logic_error("kernel candidate fails A*K = 0");
    return k;
}

/// Is c in the column lattice of K?  Solved through the Smith form of K.
inline bool lattice_contains(const SmithResult& snf_of_k, std::size_t k_cols, const IntMatrix& c) {
    const IntMatrix& u = snf_of_k.u;
    const IntMatrix& d = snf_of_k.d;
    IntMatrix w = u * c;
    std::size_t diag = std::min(d.rows(), k_cols);
    for (std::size_t i = 0; i < w.rows(); ++i) {
        Int di = (i < diag) ? d(i, i) : Int(0);
        if (di == 0) {
            if (w(i, 0) != 0) return false;
        } else if (w(i, 0) % di != 0) {
            return false;
        }
    }
    return true;
}

/// Equality of integer column spans via mutual membership.
inline bool same_column_span_Z(const IntMatrix& k1, const IntMatrix& k2) {
    if (k1.rows() != k2.rows()) throw std::invalid_argument("span comparison needs equal row counts");
    auto s1 = smith_normal_form(k1);
    auto s2 = smith_normal_form(k2);
    for (std::size_t j = 0; j < k2.cols(); ++j)
        if (!lattice_contains(s1, k1.cols(), k2.column(j))) return false;
    for (std::size_t j = 0; j < k1.cols(); ++j)
        if (!lattice_contains(s2, k2.cols(), k1.column(j))) return false;
    return true;
}

} // namespace recon
