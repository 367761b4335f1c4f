#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/algebra/polysolve.hpp"
#include "jumploci/algebra/zero_scheme.hpp"
#include "jumploci/cohom/cohomology.hpp"
#include "jumploci/sheafkit/presentation.hpp"

namespace jumploci::sheafkit {

enum class FamilyTag : std::uint8_t { Type02, Type03General, Type03NonGeneral, TypeM12, Generic };

inline const char* family_name(FamilyTag t) {
    switch (t) {
    case FamilyTag::Type02: return "type02";
    case FamilyTag::Type03General: return "type03g";
    case FamilyTag::Type03NonGeneral: return "type03ng";
    case FamilyTag::TypeM12: return "m12";
    case FamilyTag::Generic: return "generic";
    }
    return "?";
}

class FamilyError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <ExactField K>
struct BundleFamily {
    FamilyTag tag = FamilyTag::Generic;
    // The normalized bundle E (c1 in {0, -1}) as a coker or resolution.
    Presentation<K> bundle;
    // The presentation as constructed is E(twist).
    Presentation<K> presented;
    int twist = 0;
    ChernClass chern_e;

    // Defining data; only the fields of the tag are set.
    std::optional<PolyMatrix<K>> f;        // Type02: 4 x 2 linear forms
    std::vector<HomPoly<K>> q;             // Type03General: three quadrics
    std::optional<HomPoly<K>> line;        // Type03NonGeneral, TypeM12
    std::vector<HomPoly<K>> psi;           // Type03NonGeneral: three cubics; TypeM12: two quadrics
    std::optional<Presentation<K>> monad;  // Type03NonGeneral: the monad for E(1)
    std::vector<HomPoly<K>> modification;  // Type03NonGeneral: a with (a x x) = psi - l w
};

namespace detail {

template <ExactField K>
void require_form(const HomPoly<K>& p, int d, const char* what) {
    if (p.vars() != Vars::X) throw FamilyError(std::string(what) + " must be a form in x0, x1, x2");
    if (p.is_zero() || p.degree() != d)
        throw FamilyError(std::string(what) + " must be a nonzero form of degree " + std::to_string(d));
}

template <ExactField K>
bool no_common_zero(const std::vector<HomPoly<K>>& gens) {
    auto z = algebra::zero_scheme(gens);
    return z.finite && z.length == 0;
}

template <ExactField K>
BundleFamily<K> finish(BundleFamily<K> fam, ChernClass want, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    try {
        fam.presented.validate(rng);
    } catch (const PresentationError& e) {
        throw FamilyError(e.what());
    }
    fam.chern_e = chern(fam.bundle);
    if (!(fam.chern_e == want))
        throw std::logic_error("Chern classes " + std::to_string(fam.chern_e.c1) + "," + std::to_string(fam.chern_e.c2) +
                               " disagree with the family");
    return fam;
}

} // namespace detail

// E(1) = coker(f : O(-1)^2 -> O^4).
template <ExactField K>
BundleFamily<K> make_type02(const PolyMatrix<K>& f, std::uint64_t seed = 1) {
    if (f.rows() != 4 || f.cols() != 2) throw FamilyError("type02 needs a 4 x 2 matrix");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (!f.entry_zero(i, j)) detail::require_form(f(i, j), 1, "type02 entry");
    PolyMatrix<K> phi(Vars::X, {0, 0, 0, 0}, {-1, -1});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (!f.entry_zero(i, j)) phi.set(i, j, f(i, j));
    BundleFamily<K> fam;
    fam.tag = FamilyTag::Type02;
    fam.presented = Presentation<K>::coker(Ambient::P2, phi);
    fam.bundle = fam.presented.twisted(-1);
    fam.twist = 1;
    fam.f = phi;
    // Pointwise injectivity everywhere: the 2 x 2 minors have no common zero.
    std::vector<HomPoly<K>> minors;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
            auto m = phi(a, 0) * phi(b, 1) - phi(a, 1) * phi(b, 0);
            if (!m.is_zero()) minors.push_back(m);
        }
    if (minors.empty() || !detail::no_common_zero(minors)) throw FamilyError("not a bundle presentation: f drops rank");
    fam = detail::finish(std::move(fam), {0, 2}, seed);
    if (cohom::hypercohomology(fam.bundle, 0).h0 > 0) throw FamilyError("unstable input: h0(E) > 0");
    return fam;
}

// E(1) = coker(q : O(-2) -> O^3).
template <ExactField K>
BundleFamily<K> make_type03_general(const std::vector<HomPoly<K>>& q, std::uint64_t seed = 1) {
    if (q.size() != 3) throw FamilyError("type03g needs three quadrics");
    for (const auto& p : q) detail::require_form(p, 2, "type03g quadric");
    if (!detail::no_common_zero(q)) throw FamilyError("map not finite: the quadrics have a common zero");
    PolyMatrix<K> phi(Vars::X, {0, 0, 0}, {-2});
    for (int i = 0; i < 3; ++i) phi.set(i, 0, q[i]);
    BundleFamily<K> fam;
    fam.tag = FamilyTag::Type03General;
    fam.presented = Presentation<K>::coker(Ambient::P2, phi);
    fam.bundle = fam.presented.twisted(-1);
    fam.twist = 1;
    fam.q = q;
    fam = detail::finish(std::move(fam), {0, 3}, seed);

    // The zeros of the section u are the base points of the pencil {w.q : w.u = 0}.
    // Three of them collinear forces every member to contain that line, so the
    // pencil consists of singular conics and det(Q1 + t Q2) vanishes identically.
    std::mt19937_64 rng(seed ^ 0x67656e6572616cULL);
    for (int trial = 0; trial < 6; ++trial) {
        std::array<K, 3> u;
        for (auto& c : u) c = K::random(rng);
        if (u[0].is_zero() && u[1].is_zero() && u[2].is_zero()) continue;
        Matrix<K> um(1, 3);
        for (int i = 0; i < 3; ++i) um(0, i) = u[i];
        auto ws = algebra::kernel_basis(um);
        std::array<HomPoly<K>, 2> Q;
        for (int j = 0; j < 2; ++j) {
            Q[j] = HomPoly<K>(Vars::X, 2);
            for (int i = 0; i < 3; ++i) Q[j] += q[i] * ws[j][i];
        }
        bool all_singular = true;
        for (int t = 0; t <= 3 && all_singular; ++t) {
            HomPoly<K> cc = Q[0] + Q[1] * K(static_cast<std::int64_t>(t));
            if (cc.is_zero()) continue;
            // 4 det of the Gram matrix; a cubic in t, so four values decide it.
            std::array<K, 6> x;
            for (int i = 0; i < 6; ++i) x[i] = cc.coeff(i);
            K d = K(4) * x[0] * x[3] * x[5] + x[1] * x[4] * x[2] - x[0] * x[4] * x[4] - x[3] * x[2] * x[2] -
                  x[5] * x[1] * x[1];
            all_singular = d.is_zero();
        }
        if (all_singular) throw FamilyError("non-general type input: a section has three collinear zeros");
    }
    return fam;
}

// E(1) is the cohomology of O --(v, x)--> O(3) + O(1)^3 --(l, psi)--> O(4), where
// l v + sum x_i psi_i = 0. Writing -v = w.x, psi - l w = a x x gives the coker form
// E(1) = coker(O(-1) + O(-2) -> O^3 + O(-1)) with columns (x, 0) and (a, l).
template <ExactField K>
BundleFamily<K> make_type03_nongeneral(const HomPoly<K>& l, const std::vector<HomPoly<K>>& psi, std::uint64_t seed = 1) {
    detail::require_form(l, 1, "modification line");
    if (psi.size() != 3) throw FamilyError("type03ng needs three cubics");
    for (const auto& p : psi) detail::require_form(p, 3, "type03ng cubic");
    const auto x0 = HomPoly<K>::variable(Vars::X, 0), x1 = HomPoly<K>::variable(Vars::X, 1),
               x2 = HomPoly<K>::variable(Vars::X, 2);
    const std::array<HomPoly<K>, 3> x{x0, x1, x2};
    HomPoly<K> s = x0 * psi[0] + x1 * psi[1] + x2 * psi[2];
    auto quot = algebra::divide_exact(s, l);
    if (!quot) throw FamilyError("compatibility failed: l does not divide sum x_i psi_i");
    HomPoly<K> v = -*quot;
    if (!detail::no_common_zero(std::vector<HomPoly<K>>{l, psi[0], psi[1], psi[2]}))
        throw FamilyError("psi not surjective: common zero on the line");

    PolyMatrix<K> e(Vars::X, {3, 1, 1, 1}, {0});
    e.set(0, 0, v);
    for (int i = 0; i < 3; ++i) e.set(i + 1, 0, x[i]);
    PolyMatrix<K> phi(Vars::X, {4}, {3, 1, 1, 1});
    phi.set(0, 0, l);
    for (int i = 0; i < 3; ++i) phi.set(0, i + 1, psi[i]);
    Presentation<K> monad(Kind::Monad, Ambient::P2, {{0}, {3, 1, 1, 1}, {4}}, {e, phi});

    auto w = algebra::solve_forms<K>({{x0, x1, x2}}, {-v}, {2, 2, 2});
    if (!w) throw std::logic_error("Koszul lift of v failed");
    std::vector<HomPoly<K>> rest;
    for (int i = 0; i < 3; ++i) rest.push_back(psi[i] - l * (*w)[i]);
    // (a x x)_0 = a1 x2 - a2 x1, (a x x)_1 = a2 x0 - a0 x2, (a x x)_2 = a0 x1 - a1 x0.
    HomPoly<K> z(Vars::X, 1);
    auto a = algebra::solve_forms<K>({{z, x2, -x1}, {-x2, z, x0}, {x1, -x0, z}}, rest, {2, 2, 2});
    if (!a) throw std::logic_error("Koszul lift of psi failed");

    PolyMatrix<K> c(Vars::X, {0, 0, 0, -1}, {-1, -2});
    for (int i = 0; i < 3; ++i) {
        c.set(i, 0, x[i]);
        c.set(i, 1, (*a)[i]);
    }
    c.set(3, 1, l);

    BundleFamily<K> fam;
    fam.tag = FamilyTag::Type03NonGeneral;
    fam.presented = Presentation<K>::coker(Ambient::P2, c);
    fam.bundle = fam.presented.twisted(-1);
    fam.twist = 1;
    fam.line = l;
    fam.psi = psi;
    fam.monad = monad;
    fam.modification = *a;
    std::mt19937_64 rng(seed);
    try {
        monad.validate(rng);
    } catch (const PresentationError& err) {
        throw FamilyError(err.what());
    }
    return detail::finish(std::move(fam), {0, 3}, seed);
}

// E(1) = coker((l, psi1, psi2) : O(-2) -> O(-1) + O + O).
template <ExactField K>
BundleFamily<K> make_m12(const HomPoly<K>& l, const std::vector<HomPoly<K>>& psi, std::uint64_t seed = 1) {
    detail::require_form(l, 1, "modification line");
    if (psi.size() != 2) throw FamilyError("m12 needs two quadrics");
    for (const auto& p : psi) detail::require_form(p, 2, "m12 quadric");
    if (!detail::no_common_zero(std::vector<HomPoly<K>>{l, psi[0], psi[1]}))
        throw FamilyError("psi not surjective: common zero on the line");
    PolyMatrix<K> phi(Vars::X, {-1, 0, 0}, {-2});
    phi.set(0, 0, l);
    phi.set(1, 0, psi[0]);
    phi.set(2, 0, psi[1]);
    BundleFamily<K> fam;
    fam.tag = FamilyTag::TypeM12;
    fam.presented = Presentation<K>::coker(Ambient::P2, phi);
    fam.bundle = fam.presented.twisted(-1);
    fam.twist = 1;
    fam.line = l;
    fam.psi = psi;
    return detail::finish(std::move(fam), {-1, 2}, seed);
}

// Any rank-2 coker or resolution on P^2, twisted so that c1 lies in {0, -1}.
template <ExactField K>
BundleFamily<K> make_generic(const Presentation<K>& p, std::uint64_t seed = 1) {
    if (p.ambient() != Ambient::P2) throw FamilyError("generic family must live on P2");
    if (p.kind() == Kind::Monad) throw FamilyError("generic family must be a coker or a resolution");
    if (p.rank() != 2) throw FamilyError("generic family must have rank 2, got " + std::to_string(p.rank()));
    const auto c = chern(p);
    // t = floor(-c1 / 2), so c1 + 2t lies in {0, -1}.
    const int t = static_cast<int>(c.c1 <= 0 ? -c.c1 / 2 : -((c.c1 + 1) / 2));
    BundleFamily<K> fam;
    fam.tag = FamilyTag::Generic;
    fam.presented = p;
    fam.bundle = p.twisted(t);
    fam.twist = -t;
    std::mt19937_64 rng(seed);
    try {
        p.validate(rng);
    } catch (const PresentationError& e) {
        throw FamilyError(e.what());
    }
    fam.chern_e = chern(fam.bundle);
    if (fam.chern_e.c1 != 0 && fam.chern_e.c1 != -1) throw std::logic_error("normalization twist failed");
    return fam;
}

// The bundle after the coordinate change x -> A x applied to all defining data.
template <ExactField K>
std::vector<HomPoly<K>> linear_change(const Matrix<K>& A) {
    std::vector<HomPoly<K>> im;
    for (int i = 0; i < 3; ++i) {
        std::array<K, 3> row{A(i, 0), A(i, 1), A(i, 2)};
        im.push_back(HomPoly<K>::linear(Vars::X, row));
    }
    return im;
}

} // namespace jumploci::sheafkit
