#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/cohom/graded.hpp"
#include "jumploci/sheafkit/presentation.hpp"

namespace jumploci::cohom {

using sheafkit::Ambient;
using sheafkit::Kind;
using sheafkit::Presentation;

struct Cohomology {
    std::int64_t h0 = 0, h1 = 0, h2 = 0;
};

// Hypercohomology of the presentation twisted by k. Line bundles on P^n only have
// H^0 and H^n, so the spectral sequence has two rows; for at most three terms on P^2
// (two on P^1) no differential can connect them and it degenerates at E2.
// The H^n row is computed through Serre duality as the dual complex in degree -k-n-1.
template <ExactField K>
Cohomology hypercohomology(const Presentation<K>& p, int k) {
    const int top = sheafkit::ambient_dim(p.ambient());
    const int lo = p.first_degree(), hi = p.last_degree();
    if (hi - lo > top) throw std::invalid_argument("complex too long for a degenerate spectral sequence on this space");
    const int n = algebra::nvars(p.vars());
    const int dual_deg = -k - top - 1;
    auto dim_sum = [&](const std::vector<int>& tw, int shift, int sign) {
        std::int64_t s = 0;
        for (int t : tw) s += static_cast<std::int64_t>(algebra::count_monomials(n, sign * t + shift));
        return s;
    };
    // rank of the map out of complex degree q in each row
    std::map<int, std::int64_t> r0, rt;
    for (int q = lo; q < hi; ++q) {
        const auto& m = p.map_from(q);
        r0[q] = static_cast<std::int64_t>(algebra::rank(section_map(m, k)));
        rt[q] = static_cast<std::int64_t>(algebra::rank(section_map(m.transpose(), dual_deg)));
    }
    auto rank_or0 = [](const std::map<int, std::int64_t>& r, int q) {
        auto it = r.find(q);
        return it == r.end() ? 0 : it->second;
    };
    std::array<std::int64_t, 3> h{0, 0, 0};
    for (int q = lo; q <= hi; ++q) {
        const auto& tw = p.term_at(q);
        std::int64_t e0 = dim_sum(tw, k, 1) - rank_or0(r0, q) - rank_or0(r0, q - 1);
        std::int64_t et = dim_sum(tw, dual_deg, -1) - rank_or0(rt, q) - rank_or0(rt, q - 1);
        // E2^{q,0} contributes to degree q, E2^{q,top} to degree q + top.
        if (q >= 0 && q <= 2) h[q] += e0;
        else if (e0 != 0) throw std::logic_error("cohomology in negative degree: presentation is not a sheaf");
        int d = q + top;
        if (d >= 0 && d <= 2) h[d] += et;
        else if (et != 0) throw std::logic_error("cohomology outside the valid range: presentation is not a sheaf");
    }
    return {h[0], h[1], h[2]};
}

template <ExactField K>
std::pair<std::int64_t, std::int64_t> h0_h1_p2(const Presentation<K>& p, int k) {
    if (p.ambient() != Ambient::P2) throw std::invalid_argument("h0_h1_p2 needs a presentation on P2");
    auto c = hypercohomology(p, k);
    return {c.h0, c.h1};
}

enum class Stability { Stable, Semistable, Unstable };

inline const char* stability_name(Stability s) {
    switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Semistable: return "semistable";
    case Stability::Unstable: return "unstable";
    }
    return "?";
}

class NormalizeFirst : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rank 2, c1 = 0: stable iff h0(E) = 0, semistable iff h0(E(-1)) = 0.
// Rank 2, c1 = -1: stable = semistable iff h0(E) = 0.
template <ExactField K>
Stability stability_check(const Presentation<K>& p) {
    if (p.rank() != 2) throw std::invalid_argument("stability check needs rank 2");
    auto c = sheafkit::chern(p);
    if (c.c1 != 0 && c.c1 != -1) throw NormalizeFirst("normalize first: c1 = " + std::to_string(c.c1));
    const auto h0 = hypercohomology(p, 0).h0;
    if (h0 == 0) return Stability::Stable;
    if (c.c1 == -1) return Stability::Unstable;
    return hypercohomology(p, -1).h0 == 0 ? Stability::Semistable : Stability::Unstable;
}

} // namespace jumploci::cohom
