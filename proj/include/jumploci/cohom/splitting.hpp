#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jumploci/cohom/cohomology.hpp"

namespace jumploci::cohom {

struct CohomProfile {
    int lo = 0, hi = 0;
    std::map<int, std::int64_t> h0, h1;
};

struct SplittingType {
    std::vector<int> parts; // descending
    int degree() const {
        int s = 0;
        for (int a : parts) s += a;
        return s;
    }
    int rank() const { return static_cast<int>(parts.size()); }
    friend bool operator==(const SplittingType&, const SplittingType&) = default;
    friend bool operator<(const SplittingType& a, const SplittingType& b) { return a.parts < b.parts; }
    SplittingType shifted(int k) const {
        SplittingType s = *this;
        for (auto& a : s.parts) a += k;
        return s;
    }
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }
};

// Raised when the window misses the transition range; callers widen and retry.
class WindowTooSmall : public std::runtime_error {
public:
    WindowTooSmall(int lo, int hi)
        : std::runtime_error("profile window [" + std::to_string(lo) + "," + std::to_string(hi) + "] too small"),
          lo_(lo), hi_(hi) {}
    int lo() const { return lo_; }
    int hi() const { return hi_; }

private:
    int lo_, hi_;
};

class InconsistentProfile : public std::runtime_error {
public:
    InconsistentProfile() : std::runtime_error("not a profile of a sum of line bundles") {}
};

// h0 on P^1: cokernel of the H^0 block plus kernel of the H^1 block, the latter
// through H^1(O(d)) = H^0(O(-d-2))^dual with the transposed matrix.
template <ExactField K>
std::int64_t h0_p1(const Presentation<K>& p, int k) {
    if (p.ambient() != Ambient::P1 || p.kind() != Kind::Coker)
        throw std::invalid_argument("h0_profile_p1 needs a coker presentation on P1");
    const auto& phi = p.maps()[0];
    auto dims = [](const std::vector<int>& tw, int shift, int sign) {
        std::int64_t s = 0;
        for (int t : tw) s += std::max(0, sign * t + shift + 1);
        return s;
    };
    std::int64_t h0_f0 = dims(phi.row_twist(), k, 1);
    std::int64_t r0 = h0_f0 == 0 || phi.cols() == 0 ? 0 : static_cast<std::int64_t>(algebra::rank(section_map(phi, k)));
    std::int64_t h1_f1 = dims(phi.col_twist(), -k - 2, -1);
    std::int64_t r1 = h1_f1 == 0 ? 0 : static_cast<std::int64_t>(algebra::rank(section_map(phi.transpose(), -k - 2)));
    return (h0_f0 - r0) + (h1_f1 - r1);
}

template <ExactField K>
CohomProfile h0_profile_p1(const Presentation<K>& p, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("empty profile window");
    CohomProfile prof;
    prof.lo = lo;
    prof.hi = hi;
    for (int k = lo; k <= hi; ++k) {
        auto h0 = h0_p1(p, k);
        prof.h0[k] = h0;
        prof.h1[k] = h0 - sheafkit::euler_char(p, k);
    }
    return prof;
}

// Parts from first differences N(k) = h0(k) - h0(k-1) = #{i : a_i >= -k}.
inline SplittingType splitting_type(const CohomProfile& prof) {
    const int lo = prof.lo, hi = prof.hi;
    if (hi - lo < 1) throw WindowTooSmall(lo, hi);
    auto chi = [&](int k) { return prof.h0.at(k) - prof.h1.at(k); };
    const std::int64_t r = chi(lo + 1) - chi(lo);
    if (prof.h0.at(lo) != 0) throw WindowTooSmall(lo, hi);
    if (prof.h0.at(hi) - prof.h0.at(hi - 1) != r) throw WindowTooSmall(lo, hi);
    SplittingType st;
    std::int64_t prevN = 0;
    for (int k = lo + 1; k <= hi; ++k) {
        std::int64_t N = prof.h0.at(k) - prof.h0.at(k - 1);
        std::int64_t mult = N - prevN;
        if (mult < 0) throw InconsistentProfile();
        for (std::int64_t i = 0; i < mult; ++i) st.parts.push_back(-k);
        prevN = N;
    }
    if (static_cast<std::int64_t>(st.parts.size()) != r) throw InconsistentProfile();
    std::sort(st.parts.rbegin(), st.parts.rend());
    for (int k = lo; k <= hi; ++k) {
        std::int64_t rec = 0;
        for (int a : st.parts) rec += std::max(0, a + k + 1);
        if (rec != prof.h0.at(k)) throw InconsistentProfile();
    }
    return st;
}

// Bounds for coker(F1 -> F0) on P^1: every part is >= min twist of F0, so parts lie
// in [m, deg - (r-1) m]; the window [-(max part)-1, -m] is then always sufficient.
template <ExactField K>
std::pair<int, int> default_window_p1(const Presentation<K>& p) {
    const auto& f0 = p.maps()[0].row_twist();
    const int m = *std::min_element(f0.begin(), f0.end());
    const int r = p.rank();
    int deg = 0;
    for (int a : f0) deg += a;
    for (int b : p.maps()[0].col_twist()) deg -= b;
    const int amax = deg - (r - 1) * m;
    return {-amax - 1, -m};
}

// Splitting type of a coker presentation on P^1, widening the window on demand.
template <ExactField K>
SplittingType splitting_of(const Presentation<K>& p, std::pair<int, int> window) {
    auto [lo, hi] = window;
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            return splitting_type(h0_profile_p1(p, lo, hi));
        } catch (const WindowTooSmall&) {
            lo -= 4 << attempt;
            hi += 4 << attempt;
        }
    }
    throw std::runtime_error("splitting window did not stabilize");
}

template <ExactField K>
SplittingType splitting_of(const Presentation<K>& p) {
    return splitting_of(p, default_window_p1(p));
}

} // namespace jumploci::cohom
