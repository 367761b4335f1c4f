#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "jumploci/algebra/hompoly.hpp"
#include "jumploci/algebra/matrix.hpp"

namespace jumploci::algebra {

// Solve sum_j M[i][j] c_j = t_i for forms c_j of degree deg[j]; a zero entry of M
// (any degree) contributes nothing. Returns nullopt when no solution exists.
template <ExactField K>
std::optional<std::vector<HomPoly<K>>> solve_forms(const std::vector<std::vector<HomPoly<K>>>& M,
                                                   const std::vector<HomPoly<K>>& t, const std::vector<int>& deg) {
    if (M.size() != t.size()) throw std::invalid_argument("system shape mismatch");
    const Vars v = t.at(0).vars();
    const int n = nvars(v);
    std::vector<std::size_t> coff{0}, roff{0};
    for (int d : deg) coff.push_back(coff.back() + (d < 0 ? 0 : count_monomials(n, d)));
    for (const auto& ti : t) roff.push_back(roff.back() + count_monomials(n, ti.degree()));
    Matrix<K> A(roff.back(), coff.back());
    std::vector<K> b(roff.back());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (M[i].size() != deg.size()) throw std::invalid_argument("system shape mismatch");
        for (std::size_t c = 0; c < t[i].size(); ++c) b[roff[i] + c] = t[i].coeff(c);
        for (std::size_t j = 0; j < deg.size(); ++j) {
            const auto& m = M[i][j];
            if (m.is_zero() || deg[j] < 0) continue;
            if (m.degree() + deg[j] != t[i].degree()) throw std::invalid_argument("system degrees inconsistent");
            const auto& cb = monomial_basis(n, deg[j]);
            for (const auto& [e, c] : m.terms())
                for (std::size_t s = 0; s < cb.size(); ++s)
                    A(roff[i] + monomial_index(exps_add(e, cb[s]), n), coff[j] + s) += c;
        }
    }
    std::vector<K> x;
    if (!solve(A, std::span<const K>(b), x)) return std::nullopt;
    std::vector<HomPoly<K>> out;
    for (std::size_t j = 0; j < deg.size(); ++j) {
        HomPoly<K> p(v, std::max(0, deg[j]));
        if (deg[j] >= 0)
            for (std::size_t s = 0; s < p.size(); ++s) p.coeff(s) = x[coff[j] + s];
        out.push_back(std::move(p));
    }
    return out;
}

// f / g when g divides f.
template <ExactField K>
std::optional<HomPoly<K>> divide_exact(const HomPoly<K>& f, const HomPoly<K>& g) {
    if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (f.is_zero()) return HomPoly<K>(f.vars(), std::max(0, f.degree() - g.degree()));
    if (f.degree() < g.degree()) return std::nullopt;
    auto r = solve_forms<K>({{g}}, {f}, {f.degree() - g.degree()});
    if (!r) return std::nullopt;
    return (*r)[0];
}

} // namespace jumploci::algebra
