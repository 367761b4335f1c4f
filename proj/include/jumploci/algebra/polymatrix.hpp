#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/algebra/hompoly.hpp"
#include "jumploci/algebra/matrix.hpp"

namespace jumploci::algebra {

// Matrix of homogeneous polynomials with a degree template:
// entry (i, j) has degree row_twist[i] - col_twist[j] or is zero.
template <ExactField K>
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(Vars v, std::vector<int> row_twist, std::vector<int> col_twist)
        : vars_(v), rt_(std::move(row_twist)), ct_(std::move(col_twist)) {
        e_.reserve(rt_.size() * ct_.size());
        for (std::size_t i = 0; i < rt_.size(); ++i)
            for (std::size_t j = 0; j < ct_.size(); ++j) e_.emplace_back(v, std::max(0, rt_[i] - ct_[j]));
    }

    Vars vars() const { return vars_; }
    std::size_t rows() const { return rt_.size(); }
    std::size_t cols() const { return ct_.size(); }
    const std::vector<int>& row_twist() const { return rt_; }
    const std::vector<int>& col_twist() const { return ct_; }
    int template_degree(std::size_t i, std::size_t j) const { return rt_[i] - ct_[j]; }
    const HomPoly<K>& operator()(std::size_t i, std::size_t j) const { return e_[i * ct_.size() + j]; }

    void set(std::size_t i, std::size_t j, HomPoly<K> p) {
        if (p.vars() != vars_) throw std::invalid_argument("matrix entry has wrong variable set");
        int want = template_degree(i, j);
        if (!p.is_zero() && p.degree() != want)
            throw std::invalid_argument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") has degree " +
                                        std::to_string(p.degree()) + ", template requires " + std::to_string(want));
        if (p.is_zero()) p = HomPoly<K>(vars_, std::max(0, want));
        e_[i * ct_.size() + j] = std::move(p);
    }
    // Nonzero entries must sit where the template degree is non-negative.
    bool entry_zero(std::size_t i, std::size_t j) const { return (*this)(i, j).is_zero(); }

    Matrix<K> evaluate(std::span<const K> pt) const {
        Matrix<K> m(rows(), cols());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                if (!entry_zero(i, j)) m(i, j) = (*this)(i, j).evaluate(pt);
        return m;
    }

    PolyMatrix transpose() const {
        std::vector<int> nr, nc;
        for (int c : ct_) nr.push_back(-c);
        for (int r : rt_) nc.push_back(-r);
        PolyMatrix t(vars_, nr, nc);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                if (!entry_zero(i, j)) t.set(j, i, (*this)(i, j));
        return t;
    }

    // Substitute the variables of every entry; degrees scale by the image degree.
    PolyMatrix substitute(const std::vector<HomPoly<K>>& images) const {
        const int e = images.at(0).degree();
        std::vector<int> nr, nc;
        for (int r : rt_) nr.push_back(r * e);
        for (int c : ct_) nc.push_back(c * e);
        PolyMatrix out(images[0].vars(), nr, nc);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                if (!entry_zero(i, j)) out.set(i, j, (*this)(i, j).substitute(images));
        return out;
    }

    // Symbolic determinant: cofactor expansion (memoized over column subsets) up to
    // size 6, evaluation and interpolation beyond.
    HomPoly<K> det() const {
        if (rows() != cols()) throw std::invalid_argument("determinant of non-square matrix");
        const std::size_t n = rows();
        int d = 0;
        for (std::size_t i = 0; i < n; ++i) d += rt_[i] - ct_[i];
        if (n == 0) return HomPoly<K>::constant(vars_, K(1));
        if (d < 0) {
            // Some entry in every permutation has negative template degree.
            return HomPoly<K>(vars_, 0);
        }
        if (n <= 6) return det_cofactor(d);
        return det_interpolate(d);
    }

private:
    HomPoly<K> det_cofactor(int d) const {
        const std::size_t n = rows();
        // f[mask]: determinant of rows 0..popcount(mask)-1 against columns in mask,
        // signs from the column positions within the mask.
        std::vector<HomPoly<K>> f(std::size_t{1} << n);
        std::vector<bool> have(f.size(), false);
        f[0] = HomPoly<K>::constant(vars_, K(1));
        have[0] = true;
        for (std::size_t mask = 1; mask < f.size(); ++mask) {
            int r = __builtin_popcountll(mask) - 1;
            bool init = false;
            HomPoly<K> acc;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(mask >> j & 1)) continue;
                std::size_t sub = mask & ~(std::size_t{1} << j);
                if (!have[sub] || f[sub].is_zero() || entry_zero(r, j)) continue;
                HomPoly<K> t = f[sub] * (*this)(r, j);
                // Expansion along the last row: sign is the parity of mask columns after j.
                if (__builtin_popcountll(mask >> (j + 1)) & 1) t = -t;
                if (!init) {
                    acc = std::move(t);
                    init = true;
                } else {
                    acc += t;
                }
            }
            if (init) {
                f[mask] = std::move(acc);
                have[mask] = true;
            }
        }
        std::size_t full = f.size() - 1;
        if (!have[full]) return HomPoly<K>(vars_, d);
        if (f[full].degree() != d) throw std::logic_error("determinant degree disagrees with template");
        return f[full];
    }

    HomPoly<K> det_interpolate(int d) const {
        const int nv = nvars(vars_);
        const auto& basis = monomial_basis(nv, d);
        const std::size_t N = basis.size();
        std::mt19937_64 rng(0x6a756d70ull + N);
        for (int attempt = 0; attempt < 8; ++attempt) {
            Matrix<K> A(N, N);
            std::vector<K> b(N);
            for (std::size_t r = 0; r < N; ++r) {
                std::vector<K> pt(nv);
                for (auto& x : pt) x = K::random(rng);
                for (std::size_t c = 0; c < N; ++c) {
                    K v(1);
                    for (int k = 0; k < nv; ++k) v *= pt[k].pow(basis[c][k]);
                    A(r, c) = v;
                }
                b[r] = algebra::det(evaluate(pt));
            }
            std::vector<K> x;
            if (rank(A) < N) continue;
            if (!solve(A, std::span<const K>(b), x)) continue;
            HomPoly<K> p(vars_, d);
            for (std::size_t c = 0; c < N; ++c) p.coeff(c) = x[c];
            return p;
        }
        throw std::runtime_error("interpolation points stayed degenerate");
    }

    Vars vars_ = Vars::X;
    std::vector<int> rt_, ct_;
    std::vector<HomPoly<K>> e_;
};

} // namespace jumploci::algebra
