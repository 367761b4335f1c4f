#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/loci/locus.hpp"

namespace jumploci::loci {

struct FitSample {
    std::array<Fp, 6> xi{};
    bool smooth = false;
    std::optional<int> a;     // jump size, smooth samples
    std::size_t corank = 0;   // corank of alpha(xi)
    bool forced = false;
};

struct FitResult {
    LocusPolynomial<Fp> locus;
    std::vector<FitSample> samples;
    std::uint64_t seed = 0;
    std::size_t pencils = 0;
    std::size_t fit_dimension = 0;
    int max_jump = 0;
};

namespace detail {

inline std::array<Fp, 6> normalize6(std::array<Fp, 6> x) {
    int k = 0;
    while (k < 6 && x[k].is_zero()) ++k;
    if (k == 6) throw std::invalid_argument("zero conic");
    const Fp inv = x[k].inv();
    for (auto& v : x) v *= inv;
    return x;
}

inline std::array<Fp, 6> random6(std::mt19937_64& rng) {
    std::array<Fp, 6> x;
    for (auto& v : x) v = Fp::random(rng);
    return x;
}

// Jumping conics on one random pencil: roots of the maximal-minor gcd of alpha, each confirmed by corank.
inline std::vector<FitSample> pencil_hits(const JumpOracle<Fp>& oracle, std::uint64_t stream) {
    std::mt19937_64 rng(stream);
    auto a = random6(rng), b = random6(rng);
    std::vector<FitSample> out;
    Matrix<Fp> m(2, 6);
    for (int i = 0; i < 6; ++i) {
        m(0, i) = a[i];
        m(1, i) = b[i];
    }
    if (algebra::rank(m) != 2) return out;
    PencilProbe<Fp> probe(a, b);
    auto g = maximal_minor_gcd(oracle.alpha_forward(std::span<const Fp>(a)), oracle.alpha_forward(std::span<const Fp>(b)),
                               splitmix64(stream));
    if (g.is_zero()) throw std::domain_error("pencil contained in the jumping locus");
    if (g.degree() == 0) return out;
    for (const auto& t : algebra::roots_in_field(g)) {
        FitSample s;
        s.xi = probe.point(t);
        ConicForm<Fp> C(s.xi);
        s.corank = oracle.h1_sym2(C);
        if (s.corank == 0) continue;
        auto info = oracle.conic(C);
        s.smooth = C.is_smooth();
        if (s.smooth) {
            if (!info.a || *info.a < 1 || s.corank != static_cast<std::size_t>(2 * *info.a - 1))
                throw std::logic_error("S^2 corank " + std::to_string(s.corank) + " disagrees with splitting " +
                                       info.splitting->to_string());
            s.a = info.a;
        } else if (!info.jumping) {
            throw std::logic_error("singular S^2-jumping conic has no jumping component");
        }
        s.xi = normalize6(s.xi);
        out.push_back(s);
    }
    return out;
}

} // namespace detail

// Jump-size-2 witness Z(sigma ^ s) = {(u x v).q = 0} for the type03 general family.
inline std::array<Fp, 6> forced_sample(const BundleFamily<Fp>& fam, std::uint64_t seed) {
    if (fam.tag != FamilyTag::Type03General) throw std::invalid_argument("forced samples need a type03 general family");
    std::mt19937_64 rng(task_seed(seed, "fit_j2_c0/forced", 0));
    for (;;) {
        auto u = sheafkit::random_nonzero_vec3<Fp>(rng), v = sheafkit::random_nonzero_vec3<Fp>(rng);
        auto w = sheafkit::cross<Fp>(u, v);
        HomPoly<Fp> c(Vars::X, 2);
        for (int i = 0; i < 3; ++i) c += fam.q[i] * w[i];
        if (c.is_zero()) continue;
        auto C = ConicForm<Fp>::from_poly(c);
        if (C.is_smooth()) return C.xi();
    }
}

// J2 for c1 = 0 as the lowest-degree hypersurface through sampled jumping conics.
inline FitResult fit_j2_c0(const BundleFamily<Fp>& fam, std::uint64_t seed, std::size_t sample_target = 0,
                           bool forced = true) {
    detail::require_c1(fam, 0, "fit_j2_c0");
    detail::require_semistable(fam);
    JumpOracle<Fp> oracle(fam);
    oracle.alpha();
    const int c2 = oracle.c2();
    if (sample_target == 0) sample_target = 3 * algebra::count_monomials(6, c2);

    FitResult res;
    res.seed = seed;
    auto add = [&](const FitSample& s) {
        for (const auto& o : res.samples)
            if (o.xi == s.xi) return;
        res.samples.push_back(s);
    };
    if (forced && fam.tag == FamilyTag::Type03General) {
        FitSample s;
        s.xi = detail::normalize6(forced_sample(fam, seed));
        ConicForm<Fp> C(s.xi);
        auto info = oracle.conic(C);
        s.smooth = true;
        s.a = info.a;
        s.corank = oracle.h1_sym2(C);
        s.forced = true;
        if (*s.a != 2 || s.corank != 3) throw std::logic_error("Z(sigma ^ s) is not a conic of jump size 2");
        add(s);
    }
    constexpr std::size_t batch = 16;
    const std::size_t limit = 40 * sample_target + 400;
    while (res.samples.size() < sample_target) {
        if (res.pencils >= limit)
            throw std::runtime_error("sampling exhausted: " + std::to_string(res.samples.size()) + " of " +
                                     std::to_string(sample_target) + " jumping conics after " +
                                     std::to_string(res.pencils) + " pencils");
        const std::size_t base = res.pencils;
        auto hits = parallel_map<std::vector<FitSample>>(
            batch, [&](std::size_t i) { return detail::pencil_hits(oracle, task_seed(seed, "fit_j2_c0/pencil", base + i)); });
        res.pencils += batch;
        for (const auto& h : hits)
            for (const auto& s : h)
                if (res.samples.size() < sample_target) add(s);
    }
    for (const auto& s : res.samples)
        if (s.a) res.max_jump = std::max(res.max_jump, *s.a);

    std::vector<std::vector<Fp>> pts;
    for (const auto& s : res.samples) pts.emplace_back(s.xi.begin(), s.xi.end());
    for (int d = 1; d <= c2 + 1; ++d) {
        auto basis = algebra::fit_homogeneous<Fp>(pts, d, Vars::XI);
        if (basis.empty()) continue;
        if (basis.size() > 1)
            throw std::runtime_error("insufficient samples: degree " + std::to_string(d) + " fit space has dimension " +
                                     std::to_string(basis.size()));
        if (d != c2)
            throw std::logic_error("fitted degree " + std::to_string(d) + " differs from c2 = " + std::to_string(c2));
        res.fit_dimension = 1;
        res.locus = make_locus(LocusKind::J2, Provenance::Interpolated, basis[0]);
        return res;
    }
    throw std::runtime_error("no hypersurface of degree <= c2 + 1 through the samples");
}

// A jumping line for c1 = 0: a root of j1 along a random pencil of lines.
inline std::array<Fp, 3> find_jumping_line(const BundleFamily<Fp>& fam, std::uint64_t seed) {
    auto j1 = j1_poly_c0(fam);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        std::mt19937_64 rng(task_seed(seed, "find_jumping_line", i));
        auto a = sheafkit::random_nonzero_vec3<Fp>(rng), b = sheafkit::random_nonzero_vec3<Fp>(rng);
        auto r = algebra::restrict_to_pencil(j1.poly, std::span<const Fp>(a), std::span<const Fp>(b));
        if (r.is_zero()) continue;
        auto roots = algebra::roots_in_field(r);
        if (roots.empty()) continue;
        std::array<Fp, 3> l;
        for (int k = 0; k < 3; ++k) l[k] = a[k] + roots[0] * b[k];
        if (l == std::array<Fp, 3>{}) continue;
        return normalize3(l);
    }
    throw std::runtime_error("no jumping line found");
}

// Points of the plane curve P (in any three variables), from roots along random pencils.
inline std::vector<std::array<Fp, 3>> points_on_curve(const HomPoly<Fp>& P, std::uint64_t seed, std::size_t n) {
    std::vector<std::array<Fp, 3>> out;
    for (std::uint64_t i = 0; out.size() < n && i < 20 * n + 50; ++i) {
        std::mt19937_64 rng(task_seed(seed, "points_on_curve", i));
        auto a = sheafkit::random_nonzero_vec3<Fp>(rng), b = sheafkit::random_nonzero_vec3<Fp>(rng);
        auto r = algebra::restrict_to_pencil(P, std::span<const Fp>(a), std::span<const Fp>(b));
        if (r.is_zero()) continue;
        for (const auto& t : algebra::roots_in_field(r)) {
            std::array<Fp, 3> x;
            for (int k = 0; k < 3; ++k) x[k] = a[k] + t * b[k];
            if (x == std::array<Fp, 3>{} || out.size() == n) continue;
            auto v = normalize3(x);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    }
    return out;
}

// Number of products L * L (L' random) on the hypersurface P.
inline int closure_check(const LocusPolynomial<Fp>& P, const std::array<Fp, 3>& l, std::uint64_t seed, int count = 20) {
    std::mt19937_64 rng(task_seed(seed, "closure_check", 0));
    int hits = 0;
    for (int i = 0; i < count; ++i) {
        auto C = ConicForm<Fp>::line_pair(l, sheafkit::random_nonzero_vec3<Fp>(rng));
        hits += P.poly.evaluate(std::span<const Fp>(C.xi())).is_zero();
    }
    return hits;
}

} // namespace jumploci::loci
