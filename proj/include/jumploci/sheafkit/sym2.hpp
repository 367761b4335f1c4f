#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "jumploci/sheafkit/presentation.hpp"

namespace jumploci::sheafkit {

// S^2 of E = coker(phi : F1 -> F0) for rank-2 E:
//   Lambda^2 F1 --d2--> F1 (x) F0 --d1--> S^2 F0,
//   d1(e_j (x) f_i) = phi(e_j) f_i,   d2(e_j ^ e_l) = e_j (x) phi(e_l) - e_l (x) phi(e_j).
// Basis orders: S^2 F0 by pairs (i <= k) lexicographic; F1 (x) F0 by (j, i) with j major;
// Lambda^2 F1 by pairs (j < l) lexicographic.
template <ExactField K>
Presentation<K> sym2_resolution(const Presentation<K>& p) {
    if (p.kind() != Kind::Coker) throw std::invalid_argument("sym2 needs a coker presentation");
    if (p.rank() != 2) throw std::invalid_argument("sym2 resolution needs rank 2, got " + std::to_string(p.rank()));
    const auto& phi = p.maps()[0];
    const auto& a = phi.row_twist(); // F0
    const auto& b = phi.col_twist(); // F1
    const std::size_t r0 = a.size(), r1 = b.size();
    const Vars v = p.vars();

    std::vector<std::pair<std::size_t, std::size_t>> s2, l2;
    std::vector<int> s2t, tt, l2t;
    for (std::size_t i = 0; i < r0; ++i)
        for (std::size_t k = i; k < r0; ++k) {
            s2.emplace_back(i, k);
            s2t.push_back(a[i] + a[k]);
        }
    auto s2_index = [&](std::size_t i, std::size_t k) {
        if (i > k) std::swap(i, k);
        // Pairs before row i: sum_{u<i} (r0 - u).
        return i * r0 - i * (i - 1) / 2 + (k - i);
    };
    for (std::size_t j = 0; j < r1; ++j)
        for (std::size_t i = 0; i < r0; ++i) tt.push_back(b[j] + a[i]);
    for (std::size_t j = 0; j < r1; ++j)
        for (std::size_t l = j + 1; l < r1; ++l) {
            l2.emplace_back(j, l);
            l2t.push_back(b[j] + b[l]);
        }

    PolyMatrix<K> d1(v, s2t, tt);
    for (std::size_t j = 0; j < r1; ++j)
        for (std::size_t i = 0; i < r0; ++i) {
            std::size_t col = j * r0 + i;
            std::vector<HomPoly<K>> acc(s2.size());
            std::vector<bool> used(s2.size(), false);
            for (std::size_t k = 0; k < r0; ++k) {
                if (phi.entry_zero(k, j)) continue;
                std::size_t row = s2_index(k, i);
                if (!used[row]) {
                    acc[row] = phi(k, j);
                    used[row] = true;
                } else {
                    acc[row] += phi(k, j);
                }
            }
            for (std::size_t row = 0; row < s2.size(); ++row)
                if (used[row]) d1.set(row, col, acc[row]);
        }

    if (r1 < 2) {
        return Presentation<K>::coker(p.ambient(), d1);
    }
    PolyMatrix<K> d2(v, tt, l2t);
    for (std::size_t c = 0; c < l2.size(); ++c) {
        auto [j, l] = l2[c];
        for (std::size_t i = 0; i < r0; ++i) {
            // e_j (x) phi(e_l): coefficient phi(i, l) at (j, i); minus e_l (x) phi(e_j).
            if (!phi.entry_zero(i, l)) d2.set(j * r0 + i, c, phi(i, l));
            if (!phi.entry_zero(i, j)) d2.set(l * r0 + i, c, -phi(i, j));
        }
    }
    return Presentation<K>(Kind::Resolution, p.ambient(), {l2t, tt, s2t}, {d2, d1});
}

} // namespace jumploci::sheafkit
