#pragma once

#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "jumploci/algebra/hompoly.hpp"
#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/unipoly.hpp"

namespace jumploci::algebra {

// Row of monomial values at pt, in basis order.
template <ExactField K>
std::vector<K> monomial_values(std::span<const K> pt, int n, int d) {
    const auto& basis = monomial_basis(n, d);
    std::vector<std::vector<K>> pw(n, std::vector<K>(d + 1));
    for (int v = 0; v < n; ++v) {
        pw[v][0] = K(1);
        for (int e = 1; e <= d; ++e) pw[v][e] = pw[v][e - 1] * pt[v];
    }
    std::vector<K> row(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        K v(1);
        for (int k = 0; k < n; ++k) v *= pw[k][basis[c][k]];
        row[c] = v;
    }
    return row;
}

// Basis of degree-d forms vanishing at every point (reduced echelon normalized).
template <ExactField K>
std::vector<HomPoly<K>> fit_homogeneous(const std::vector<std::vector<K>>& points, int d, Vars v = Vars::XI) {
    if (d < 0) throw std::invalid_argument("fit degree must be non-negative");
    const int n = nvars(v);
    const std::size_t N = count_monomials(n, d);
    Matrix<K> m(points.size(), N);
    for (std::size_t r = 0; r < points.size(); ++r) {
        if (static_cast<int>(points[r].size()) != n) throw std::invalid_argument("point has wrong arity");
        auto row = monomial_values<K>(points[r], n, d);
        for (std::size_t c = 0; c < N; ++c) m(r, c) = row[c];
    }
    std::vector<HomPoly<K>> out;
    for (const auto& kv : kernel_basis(m)) {
        HomPoly<K> p(v, d);
        for (std::size_t c = 0; c < N; ++c) p.coeff(c) = kv[c];
        out.push_back(p);
    }
    return out;
}

// Restriction of P to the pencil t -> a + t b, recovered by evaluation and interpolation.
template <ExactField K>
UniPoly<K> restrict_to_pencil(const HomPoly<K>& P, std::span<const K> a, std::span<const K> b) {
    const int n = P.nv();
    const int d = P.degree();
    std::vector<K> ts, vs;
    std::vector<K> pt(n);
    for (int i = 0; i <= d; ++i) {
        K t(static_cast<std::int64_t>(i));
        for (int k = 0; k < n; ++k) pt[k] = a[k] + t * b[k];
        ts.push_back(t);
        vs.push_back(P.evaluate(pt));
    }
    return interpolate<K>(ts, vs);
}

} // namespace jumploci::algebra
