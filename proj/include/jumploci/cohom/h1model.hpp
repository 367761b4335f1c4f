#pragma once

#include <stdexcept>
#include <vector>

#include "jumploci/cohom/cohomology.hpp"

namespace jumploci::cohom {

// Serre-dual model of H^1(E(k)) for E resolved as G_n -> ... -> G_0 -> E (n <= 2) on P^2:
// H^1(E(k))^dual = Z_m / B_m with m = -k-3, where in V_m = H^0(G_1^dual(m)),
// B_m = image of H^0(G_0^dual(m)) and Z_m = kernel into H^0(G_2^dual(m)).
// A form h of degree e acts V_m -> V_{m+e} and is dual to h : H^1(E(k-e)) -> H^1(E(k)).
template <ExactField K>
class DualQuotient {
public:
    DualQuotient(const Presentation<K>& p, int m) : m_(m) {
        if (p.ambient() != Ambient::P2) throw std::invalid_argument("H1 model needs a presentation on P2");
        if (p.kind() == Kind::Monad) throw std::invalid_argument("H1 model needs a resolution (coker or three-term)");
        const int n = 3;
        const auto& last = p.maps().back(); // G_1 -> G_0
        g1_ = last.col_twist();
        off_.assign(1, 0);
        for (int b : g1_) off_.push_back(off_.back() + algebra::count_monomials(n, m - b));
        const std::size_t N = off_.back();

        Matrix<K> bm = section_map(last.transpose(), m); // H^0(G_0^dual(m)) -> V_m
        Matrix<K> bt = bm.transpose();
        bpiv_ = algebra::rref(bt);
        brows_ = Matrix<K>(bpiv_.size(), N);
        for (std::size_t i = 0; i < bpiv_.size(); ++i)
            for (std::size_t j = 0; j < N; ++j) brows_(i, j) = bt(i, j);

        std::vector<std::vector<K>> z;
        if (p.maps().size() == 2) {
            Matrix<K> zm = section_map(p.maps()[0].transpose(), m); // V_m -> H^0(G_2^dual(m))
            z = algebra::kernel_basis(zm);
            if (zm.cols() != N) throw std::logic_error("H1 model block mismatch");
        } else {
            for (std::size_t j = 0; j < N; ++j) {
                std::vector<K> e(N);
                e[j] = K(1);
                z.push_back(std::move(e));
            }
        }
        for (auto& v : z) reduce_by_b(v);
        std::vector<std::vector<K>> nz;
        for (auto& v : z) {
            bool any = false;
            for (const auto& x : v) any = any || !x.is_zero();
            if (any) nz.push_back(std::move(v));
        }
        if (!nz.empty()) {
            Matrix<K> cm = Matrix<K>::from_rows(nz, N);
            cpiv_ = algebra::rref(cm);
            crows_ = Matrix<K>(cpiv_.size(), N);
            for (std::size_t i = 0; i < cpiv_.size(); ++i)
                for (std::size_t j = 0; j < N; ++j) crows_(i, j) = cm(i, j);
        } else {
            crows_ = Matrix<K>(0, N);
        }
    }

    int degree() const { return m_; }
    std::size_t dim() const { return cpiv_.size(); }
    std::size_t ambient_dim() const { return off_.back(); }
    const std::vector<int>& g1() const { return g1_; }
    const std::vector<std::size_t>& offsets() const { return off_; }
    std::vector<K> basis_vector(std::size_t i) const { return {crows_.row(i).begin(), crows_.row(i).end()}; }

    // Coordinates of a cycle in the quotient basis.
    std::vector<K> coords(std::vector<K> v) const {
        reduce_by_b(v);
        std::vector<K> out(cpiv_.size());
        for (std::size_t i = 0; i < cpiv_.size(); ++i) out[i] = v[cpiv_[i]];
        return out;
    }

private:
    void reduce_by_b(std::vector<K>& v) const {
        for (std::size_t i = 0; i < bpiv_.size(); ++i) {
            K f = v[bpiv_[i]];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!brows_(i, j).is_zero()) v[j] -= f * brows_(i, j);
        }
    }

    int m_;
    std::vector<int> g1_;
    std::vector<std::size_t> off_;
    std::vector<std::size_t> bpiv_, cpiv_;
    Matrix<K> brows_, crows_;
};

// Multiplication by degree-e forms from Q_m to Q_{m+e}, one matrix per monomial.
// For m = -k-3 the transpose of matrix(h) is h : H^1(E(k-e)) -> H^1(E(k)) in dual bases.
template <ExactField K>
class MultiplicationModel {
public:
    MultiplicationModel(const Presentation<K>& p, int m, int e) : e_(e), from_(p, m), to_(p, m + e) {
        const int n = 3;
        const auto& mons = algebra::monomial_basis(n, e);
        const auto& g1 = from_.g1();
        for (const auto& mu : mons) {
            Matrix<K> M(to_.dim(), from_.dim());
            for (std::size_t c = 0; c < from_.dim(); ++c) {
                auto v = from_.basis_vector(c);
                std::vector<K> w(to_.ambient_dim());
                for (std::size_t j = 0; j < g1.size(); ++j) {
                    const int sd = m - g1[j];
                    if (sd < 0) continue;
                    const auto& sb = algebra::monomial_basis(n, sd);
                    for (std::size_t s = 0; s < sb.size(); ++s) {
                        const K& x = v[from_.offsets()[j] + s];
                        if (x.is_zero()) continue;
                        w[to_.offsets()[j] + algebra::monomial_index(algebra::exps_add(sb[s], mu), n)] += x;
                    }
                }
                auto col = to_.coords(std::move(w));
                for (std::size_t r = 0; r < col.size(); ++r) M(r, c) = col[r];
            }
            mats_.push_back(std::move(M));
        }
    }

    int form_degree() const { return e_; }
    std::size_t source_dim() const { return from_.dim(); }
    std::size_t target_dim() const { return to_.dim(); }
    const std::vector<Matrix<K>>& monomial_matrices() const { return mats_; }

    // Matrix of multiplication by h (coefficients in monomial order of degree e).
    Matrix<K> matrix(std::span<const K> h) const {
        Matrix<K> M(to_.dim(), from_.dim());
        for (std::size_t u = 0; u < mats_.size(); ++u) {
            if (h[u].is_zero()) continue;
            for (std::size_t r = 0; r < M.rows(); ++r)
                for (std::size_t c = 0; c < M.cols(); ++c)
                    if (!mats_[u](r, c).is_zero()) M(r, c) += h[u] * mats_[u](r, c);
        }
        return M;
    }
    Matrix<K> matrix(const HomPoly<K>& h) const {
        if (h.degree() != e_) throw std::invalid_argument("form degree does not match the model");
        return matrix(std::span<const K>(h.coeffs()));
    }

    // Matrix with entries linear in the coefficient variables (monomial u <-> variable u).
    PolyMatrix<K> symbolic(algebra::Vars v) const {
        if (static_cast<std::size_t>(algebra::nvars(v)) != mats_.size())
            throw std::invalid_argument("coefficient variables do not match the monomial count");
        PolyMatrix<K> P(v, std::vector<int>(to_.dim(), 1), std::vector<int>(from_.dim(), 0));
        for (std::size_t r = 0; r < to_.dim(); ++r)
            for (std::size_t c = 0; c < from_.dim(); ++c) {
                HomPoly<K> ent(v, 1);
                for (std::size_t u = 0; u < mats_.size(); ++u) ent.coeff(u) = mats_[u](r, c);
                P.set(r, c, ent);
            }
        return P;
    }

private:
    int e_;
    DualQuotient<K> from_, to_;
    std::vector<Matrix<K>> mats_;
};

// h^0 of E(k) restricted to the divisor {h = 0} of degree e:
// h0(E(k)) - h0(E(k-e)) + dim ker(h : H^1(E(k-e)) -> H^1(E(k))).
// Valid for every divisor, reduced or not: E is locally free, so tensoring
// 0 -> O(-e) -> O -> O_Z -> 0 with E(k) stays exact.
template <ExactField K>
std::int64_t h0_on_divisor(const Presentation<K>& p, const HomPoly<K>& h, int k) {
    const int e = h.degree();
    const int m = -k - 3;
    MultiplicationModel<K> mm(p, m, e);
    auto M = mm.matrix(h);
    std::int64_t ker = static_cast<std::int64_t>(mm.target_dim()) - static_cast<std::int64_t>(algebra::rank(M));
    return hypercohomology(p, k).h0 - hypercohomology(p, k - e).h0 + ker;
}

} // namespace jumploci::cohom
