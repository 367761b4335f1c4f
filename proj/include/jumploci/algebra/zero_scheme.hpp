#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "jumploci/algebra/hompoly.hpp"
#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/unipoly.hpp"

namespace jumploci::algebra {

// Graded pieces of S/I for I generated by homogeneous forms, with a fixed complement
// basis (non-pivot monomials of the reduced echelon form of I_d).
template <ExactField K>
class GradedQuotient {
public:
    explicit GradedQuotient(std::vector<HomPoly<K>> gens) : gens_(std::move(gens)) {
        if (gens_.empty()) throw std::invalid_argument("ideal needs at least one generator");
        n_ = gens_[0].nv();
        vars_ = gens_[0].vars();
    }

    struct Piece {
        int degree = 0;
        Matrix<K> ideal;                  // reduced echelon rows spanning I_d
        std::vector<std::size_t> pivots;  // pivot column per ideal row
        std::vector<std::size_t> free;    // monomial indices spanning the quotient
    };

    Piece piece(int d) const {
        Piece pc;
        pc.degree = d;
        const std::size_t N = count_monomials(n_, d);
        std::vector<std::vector<K>> rows;
        for (const auto& g : gens_) {
            if (g.is_zero() || g.degree() > d) continue;
            for (const auto& m : monomial_basis(n_, d - g.degree())) {
                auto prod = g * HomPoly<K>::monomial(vars_, m);
                rows.push_back(prod.coeffs());
            }
        }
        Matrix<K> a = rows.empty() ? Matrix<K>(0, N) : Matrix<K>::from_rows(rows, N);
        pc.pivots = rref(a);
        pc.ideal = Matrix<K>(pc.pivots.size(), N);
        for (std::size_t i = 0; i < pc.pivots.size(); ++i)
            for (std::size_t j = 0; j < N; ++j) pc.ideal(i, j) = a(i, j);
        std::vector<bool> is_piv(N, false);
        for (auto p : pc.pivots) is_piv[p] = true;
        for (std::size_t j = 0; j < N; ++j)
            if (!is_piv[j]) pc.free.push_back(j);
        return pc;
    }

    std::size_t hilbert(int d) const { return piece(d).free.size(); }

    // Coordinates of a degree-d form in the quotient complement basis.
    static std::vector<K> coords(const Piece& pc, std::vector<K> v) {
        for (std::size_t i = 0; i < pc.pivots.size(); ++i) {
            K f = v[pc.pivots[i]];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!pc.ideal(i, j).is_zero()) v[j] -= f * pc.ideal(i, j);
        }
        std::vector<K> out;
        out.reserve(pc.free.size());
        for (auto j : pc.free) out.push_back(v[j]);
        return out;
    }

    // Matrix of multiplication by h from piece d to piece d + deg h, in complement bases.
    Matrix<K> multiplication(const Piece& from, const Piece& to, const HomPoly<K>& h) const {
        Matrix<K> m(to.free.size(), from.free.size());
        const auto& basis = monomial_basis(n_, from.degree);
        for (std::size_t c = 0; c < from.free.size(); ++c) {
            auto prod = h * HomPoly<K>::monomial(vars_, basis[from.free[c]]);
            auto col = coords(to, prod.coeffs());
            for (std::size_t r = 0; r < col.size(); ++r) m(r, c) = col[r];
        }
        return m;
    }

    int nv() const { return n_; }
    Vars vars() const { return vars_; }
    int max_generator_degree() const {
        int d = 0;
        for (const auto& g : gens_) d = std::max(d, g.degree());
        return d;
    }

private:
    std::vector<HomPoly<K>> gens_;
    int n_ = 0;
    Vars vars_ = Vars::X;
};

struct ZeroSchemeInfo {
    bool finite = false;          // Hilbert function stabilized to a constant
    std::size_t length = 0;       // degree of the subscheme (0: empty)
    std::size_t distinct = 0;     // number of distinct points over the algebraic closure
    int stable_degree = -1;
};

// Length and number of distinct points of the subscheme of P^{n-1} cut out by gens.
// The Hilbert function is tracked until three consecutive equal values past the
// generator degrees; distinct points come from the squarefree part of
// det(M_lambda - t M_h) on the stable piece.
template <ExactField K>
ZeroSchemeInfo zero_scheme(const std::vector<HomPoly<K>>& gens, int max_degree = 24, std::uint64_t seed = 0x7a65726fULL) {
    GradedQuotient<K> q(gens);
    ZeroSchemeInfo info;
    const int d0 = q.max_generator_degree();
    std::vector<std::size_t> h;
    int stable = -1;
    for (int d = 0; d <= max_degree; ++d) {
        h.push_back(q.hilbert(d));
        if (d >= d0 + 2 && h[d] == h[d - 1] && h[d - 1] == h[d - 2]) {
            stable = d - 2;
            break;
        }
    }
    if (stable < 0) return info;
    info.finite = true;
    info.length = h[stable];
    info.stable_degree = stable;
    if (info.length == 0) return info;

    auto from = q.piece(stable);
    auto to = q.piece(stable + 1);
    std::mt19937_64 rng(seed);
    const int n = q.nv();
    std::size_t best = 0;
    for (int attempt = 0, good = 0; attempt < 12 && good < 2; ++attempt) {
        std::vector<K> lc(n), hc(n);
        for (auto& x : lc) x = K::random(rng);
        for (auto& x : hc) x = K::random(rng);
        auto Ml = q.multiplication(from, to, HomPoly<K>::linear(q.vars(), lc));
        auto Mh = q.multiplication(from, to, HomPoly<K>::linear(q.vars(), hc));
        if (det(Mh).is_zero()) continue;
        const std::size_t L = info.length;
        std::vector<K> ts, vs;
        for (std::size_t i = 0; i <= L; ++i) {
            K t(static_cast<std::int64_t>(i));
            Matrix<K> m = Ml + (-t) * Mh;
            ts.push_back(t);
            vs.push_back(det(m));
        }
        auto P = interpolate<K>(ts, vs);
        best = std::max<std::size_t>(best, static_cast<std::size_t>(std::max(0, P.squarefree().degree())));
        ++good;
    }
    info.distinct = best;
    return info;
}

} // namespace jumploci::algebra
