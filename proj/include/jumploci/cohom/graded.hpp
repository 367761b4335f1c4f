#pragma once

#include <cstddef>
#include <vector>

#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/polymatrix.hpp"

namespace jumploci::cohom {

using algebra::ExactField;
using algebra::Exps;
using algebra::HomPoly;
using algebra::Matrix;
using algebra::PolyMatrix;

// Offsets of the blocks of H^0(sum O(t_i + k)) in the concatenated monomial bases.
inline std::vector<std::size_t> block_offsets(const std::vector<int>& twists, int k, int n) {
    std::vector<std::size_t> off{0};
    for (int t : twists) off.push_back(off.back() + algebra::count_monomials(n, t + k));
    return off;
}

// Matrix (target x source) of H^0 of m twisted by k, in monomial bases:
// source sum O(col_twist + k), target sum O(row_twist + k).
template <ExactField K>
Matrix<K> section_map(const PolyMatrix<K>& m, int k) {
    const int n = algebra::nvars(m.vars());
    auto src = block_offsets(m.col_twist(), k, n);
    auto dst = block_offsets(m.row_twist(), k, n);
    Matrix<K> out(dst.back(), src.back());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const int sd = m.col_twist()[j] + k;
        if (sd < 0) continue;
        const auto& sb = algebra::monomial_basis(n, sd);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (m.entry_zero(i, j)) continue;
            const auto& f = m(i, j);
            const auto& fb = algebra::monomial_basis(n, f.degree());
            for (std::size_t fi = 0; fi < f.size(); ++fi) {
                const K& c = f.coeff(fi);
                if (c.is_zero()) continue;
                for (std::size_t s = 0; s < sb.size(); ++s) {
                    std::size_t row = dst[i] + algebra::monomial_index(algebra::exps_add(fb[fi], sb[s]), n);
                    out(row, src[j] + s) += c;
                }
            }
        }
    }
    return out;
}

} // namespace jumploci::cohom
