#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/unipoly.hpp"

namespace jumploci::cohom {

using algebra::UniPoly;

// Off-diagonal entry p(z, x) = sum_j a_j(x) z^j of the normal-form transition matrix
// diag(z^k, z^-k) + p e_12, with j in [-k+1, k-1].
template <ExactField K>
struct LaurentEntry {
    int k = 0;
    std::map<int, UniPoly<K>> a; // missing j means a_j = 0

    UniPoly<K> coeff(int j) const {
        auto it = a.find(j);
        return it == a.end() ? UniPoly<K>() : it->second;
    }
    bool is_zero() const {
        for (const auto& [j, p] : a)
            if (!p.is_zero()) return false;
        return true;
    }
    void check() const {
        if (k < 0) throw std::invalid_argument("k must be non-negative");
        if (k == 0 && !is_zero()) throw std::invalid_argument("k = 0 forces p = 0");
        for (const auto& [j, p] : a)
            if (!p.is_zero() && (j <= -k || j >= k))
                throw std::invalid_argument("coefficient index " + std::to_string(j) + " outside [-k+1, k-1]");
    }
};

// Gamma[r][c] = a_{c-r}(x), a k x k Toeplitz matrix.
template <ExactField K>
class GammaMatrix {
public:
    explicit GammaMatrix(LaurentEntry<K> p) : p_(std::move(p)) {
        p_.check();
        if (p_.k <= 0) throw std::invalid_argument("Gamma needs k >= 1");
    }
    int k() const { return p_.k; }
    const LaurentEntry<K>& entry() const { return p_; }
    UniPoly<K> operator()(int r, int c) const { return p_.coeff(c - r); }

    Matrix<K> at(const K& x) const {
        Matrix<K> m(p_.k, p_.k);
        for (int r = 0; r < p_.k; ++r)
            for (int c = 0; c < p_.k; ++c) m(r, c) = p_.coeff(c - r)(x);
        return m;
    }
    std::size_t rank_at(const K& x) const { return algebra::rank(at(x)); }
    // Splitting O(a) + O(-a) at x with a = k - rank.
    int a_at(const K& x) const { return p_.k - static_cast<int>(rank_at(x)); }

    // det as a polynomial in x, by evaluation at deg + 1 nodes.
    UniPoly<K> det() const {
        int maxdeg = 0;
        for (const auto& [j, q] : p_.a) maxdeg = std::max(maxdeg, q.degree());
        const int bound = maxdeg * p_.k;
        std::vector<K> ts, vs;
        for (int i = 0; i <= bound; ++i) {
            K t(static_cast<std::int64_t>(i));
            ts.push_back(t);
            vs.push_back(algebra::det(at(t)));
        }
        return algebra::interpolate<K>(ts, vs);
    }

private:
    LaurentEntry<K> p_;
};

template <ExactField K>
struct ModificationStep {
    LaurentEntry<K> q;       // p = x q
    UniPoly<K> det_p, det_q; // det Gamma_p = x^k det Gamma_q
};

// Conjugation by diag(x^-1, 1) and diag(x, 1) divides p by x; checks the determinant identity.
template <ExactField K>
ModificationStep<K> elem_mod_step(const LaurentEntry<K>& p) {
    p.check();
    ModificationStep<K> out;
    out.q.k = p.k;
    const auto x = UniPoly<K>::x();
    for (const auto& [j, aj] : p.a) {
        if (aj.is_zero()) continue;
        auto [qj, rem] = UniPoly<K>::divmod(aj, x);
        if (!rem.is_zero()) throw std::invalid_argument("coefficient a_" + std::to_string(j) + " is not divisible by x");
        out.q.a[j] = qj;
    }
    GammaMatrix<K> gp(p), gq(out.q);
    out.det_p = gp.det();
    out.det_q = gq.det();
    UniPoly<K> xk = UniPoly<K>::constant(K(1));
    for (int i = 0; i < p.k; ++i) xk = xk * x;
    if (!(out.det_p == xk * out.det_q)) throw std::logic_error("determinant identity failed for the modification step");
    return out;
}

} // namespace jumploci::cohom
