#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jumploci/algebra/field.hpp"

namespace jumploci::algebra {

// Dense row-major matrix over an exact field.
template <ExactField K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<K>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }
    template <class Rng>
    static Matrix random(std::size_t rows, std::size_t cols, Rng& rng) {
        Matrix m(rows, cols);
        for (auto& x : m.a_) x = K::random(rng);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    K& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::span<K> row(std::size_t i) { return {a_.data() + i * c_, c_}; }
    std::span<const K> row(std::size_t i) const { return {a_.data() + i * c_, c_}; }
    std::vector<K> column(std::size_t j) const {
        std::vector<K> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const K& x) { return x.is_zero(); });
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const K& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator*(const K& s, Matrix a) {
        for (auto& x : a.a_) x *= s;
        return a;
    }
    std::vector<K> apply(std::span<const K> v) const {
        if (v.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<K> out(r_);
        for (std::size_t i = 0; i < r_; ++i) {
            K acc;
            for (std::size_t j = 0; j < c_; ++j)
                if (!v[j].is_zero()) acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    // Stack rows of b below a (column counts must agree, or one side is empty).
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.r_ == 0) return b;
        if (b.r_ == 0) return a;
        if (a.c_ != b.c_) throw std::invalid_argument("vstack column mismatch");
        Matrix m(a.r_ + b.r_, a.c_);
        std::copy(a.a_.begin(), a.a_.end(), m.a_.begin());
        std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(a.a_.size()));
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<K>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
        }
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<K>>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<K> a_;
};

// In-place reduced row echelon form; pivot entries are 1. Returns pivot columns.
template <ExactField K>
std::vector<std::size_t> rref(Matrix<K>& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        K inv = m(r, c).inv();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            K f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

// Forward elimination only; cheaper than rref when only the rank is needed.
template <ExactField K>
std::size_t rank(Matrix<K> m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        K inv = m(r, c).inv();
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            K f = m(i, c) * inv;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// Rows spanning the row space, in reduced echelon form (zero rows dropped).
template <ExactField K>
Matrix<K> row_basis(Matrix<K> m) {
    auto piv = rref(m);
    Matrix<K> out(piv.size(), m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

template <ExactField K>
struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::vector<K>> kernel; // reduced echelon normalized
};

template <ExactField K>
RankKernel<K> rank_kernel(const Matrix<K>& m) {
    Matrix<K> a = m;
    auto piv = rref(a);
    RankKernel<K> out;
    out.rank = piv.size();
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<K>> vecs;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<K> v(m.cols());
        v[f] = K(1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a(i, f);
        vecs.push_back(std::move(v));
    }
    if (!vecs.empty()) {
        Matrix<K> kb = row_basis(Matrix<K>::from_rows(vecs, m.cols()));
        for (std::size_t i = 0; i < kb.rows(); ++i) out.kernel.emplace_back(kb.row(i).begin(), kb.row(i).end());
    }
    return out;
}

template <ExactField K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& m) {
    return rank_kernel(m).kernel;
}

namespace detail {
inline Rational bareiss_det(const Matrix<Rational>& m) {
    const std::size_t n = m.rows();
    // Clear denominators row by row, then fraction-free elimination over Z.
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    mpq_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).raw().get_num() * (l / m(i, j).raw().get_den());
        scale *= mpq_class(l);
    }
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Rational(0);
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    mpq_class d(a[n - 1][n - 1] * sign);
    d /= scale;
    return Rational(d);
}
} // namespace detail

template <ExactField K>
K det(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return K(1);
    if constexpr (std::is_same_v<K, Rational>) {
        return detail::bareiss_det(m);
    } else {
        Matrix<K> a = m;
        K d(1);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a(p, c).is_zero()) ++p;
            if (p == n) return K();
            if (p != c) {
                for (std::size_t j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
                d = -d;
            }
            d *= a(c, c);
            K inv = a(c, c).inv();
            for (std::size_t i = c + 1; i < n; ++i) {
                if (a(i, c).is_zero()) continue;
                K f = a(i, c) * inv;
                for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
            }
        }
        return d;
    }
}

// Solve a x = b; returns false when inconsistent. Picks the solution with free variables zero.
template <ExactField K>
bool solve(const Matrix<K>& a, std::span<const K> b, std::vector<K>& x) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve shape mismatch");
    Matrix<K> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == a.cols()) return false;
    x.assign(a.cols(), K());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
    return true;
}

template <ExactField K>
std::vector<K> inverse_apply(const Matrix<K>& a, std::span<const K> b) {
    std::vector<K> x;
    if (!solve(a, b, x)) throw std::domain_error("inconsistent linear system");
    return x;
}

template <ExactField K>
Matrix<K> inverse(const Matrix<K>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<K> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = K(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Matrix<K> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

} // namespace jumploci::algebra
