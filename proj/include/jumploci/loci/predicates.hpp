#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "jumploci/algebra/fp2.hpp"
#include "jumploci/algebra/polymatrix.hpp"
#include "jumploci/algebra/zero_scheme.hpp"
#include "jumploci/loci/locus.hpp"

namespace jumploci::loci {

using algebra::Fp2;
using algebra::PolyMatrix;

namespace detail {

template <ExactField K>
void require_tag(const BundleFamily<K>& fam, FamilyTag t, const char* op) {
    if (fam.tag != t)
        throw std::invalid_argument(std::string(op) + " needs a " + sheafkit::family_name(t) + " family, got " +
                                    sheafkit::family_name(fam.tag));
}

template <ExactField K>
HomPoly<K> constant_x(const K& c) {
    return HomPoly<K>::constant(Vars::X, c);
}

template <ExactField K>
bool proportional3(std::span<const K> p, std::span<const K> q) {
    auto c = sheafkit::cross<K>(p, q);
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

} // namespace detail

// E(1) = coker(f : O(-1)^2 -> O^4) with columns f1, f2; W = k^4 are the sections of E(1).
template <ExactField K>
class Type02Predicates {
public:
    explicit Type02Predicates(const BundleFamily<K>& fam) : fam_(fam) {
        detail::require_tag(fam, FamilyTag::Type02, "type02_predicates");
        f_ = *fam.f;
    }

    std::array<K, 4> column_at(std::size_t j, std::span<const K> p) const {
        std::array<K, 4> v{};
        for (std::size_t i = 0; i < 4; ++i)
            if (!f_.entry_zero(i, j)) v[i] = f_(i, j).evaluate(p);
        return v;
    }

    // det[f1(p) f2(p) f1(q) f2(q)]; the line pq jumps iff it vanishes.
    K line_value(std::span<const K> p, std::span<const K> q) const {
        if (detail::proportional3<K>(p, q)) throw std::invalid_argument("degenerate input: p and q span no line");
        Matrix<K> m(4, 4);
        std::array<std::array<K, 4>, 4> cols{column_at(0, p), column_at(1, p), column_at(0, q), column_at(1, q)};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = cols[j][i];
        return algebra::det(m);
    }
    bool line_test(std::span<const K> p, std::span<const K> q) const { return line_value(p, q).is_zero(); }

    // The quadric det[u v f1(x) f2(x)].
    HomPoly<K> conic_eq(const std::array<K, 4>& u, const std::array<K, 4>& v) const {
        PolyMatrix<K> m(Vars::X, {0, 0, 0, 0}, {0, 0, -1, -1});
        for (std::size_t i = 0; i < 4; ++i) {
            if (!u[i].is_zero()) m.set(i, 0, detail::constant_x(u[i]));
            if (!v[i].is_zero()) m.set(i, 1, detail::constant_x(v[i]));
            for (std::size_t j = 0; j < 2; ++j)
                if (!f_.entry_zero(i, j)) m.set(i, 2 + j, f_(i, j));
        }
        return m.det();
    }

    // G(l) = line_value(p, q) with p x q = l is a quadratic form in l; fitted from values.
    LocusPolynomial<K> j1_conic(std::uint64_t seed, int evaluations = 12) const {
        std::mt19937_64 rng(task_seed(seed, "type02/j1_conic", 0));
        const std::size_t N = algebra::count_monomials(3, 2);
        Matrix<K> a(evaluations, N);
        std::vector<K> b(evaluations);
        for (int r = 0; r < evaluations; ++r) {
            auto l = sheafkit::random_nonzero_vec3<K>(rng);
            Matrix<K> lm(1, 3);
            for (int i = 0; i < 3; ++i) lm(0, i) = l[i];
            auto ker = algebra::kernel_basis(lm);
            auto c = sheafkit::cross<K>(ker[0], ker[1]);
            int k = 0;
            while (l[k].is_zero()) ++k;
            K lam = c[k] / l[k];
            std::vector<K> p = ker[0];
            for (auto& x : p) x /= lam;
            auto row = algebra::monomial_values<K>(l, 3, 2);
            for (std::size_t j = 0; j < N; ++j) a(r, j) = row[j];
            b[r] = line_value(p, ker[1]);
        }
        std::vector<K> coef;
        if (!algebra::solve(a, std::span<const K>(b), coef))
            throw std::logic_error("line predicate is not a quadratic form in line coordinates");
        HomPoly<K> g(Vars::L, 2);
        for (std::size_t j = 0; j < N; ++j) g.coeff(j) = coef[j];
        return make_locus(LocusKind::J1, Provenance::Interpolated, g);
    }

    // Zeros of the section w: the 3 x 3 minors of [w f1(x) f2(x)].
    algebra::ZeroSchemeInfo section_zeros(const std::array<K, 4>& w) const {
        std::vector<HomPoly<K>> minors;
        for (std::size_t skip = 0; skip < 4; ++skip) {
            PolyMatrix<K> m(Vars::X, {0, 0, 0}, {0, -1, -1});
            std::size_t r = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                if (i == skip) continue;
                if (!w[i].is_zero()) m.set(r, 0, detail::constant_x(w[i]));
                for (std::size_t j = 0; j < 2; ++j)
                    if (!f_.entry_zero(i, j)) m.set(r, 1 + j, f_(i, j));
                ++r;
            }
            auto d = m.det();
            if (!d.is_zero()) minors.push_back(d);
        }
        return algebra::zero_scheme(minors);
    }
    // Points x with f(x) inside the hyperplane u = 0.
    algebra::ZeroSchemeInfo hyperplane_points(const std::array<K, 4>& u) const {
        std::vector<HomPoly<K>> g;
        for (std::size_t j = 0; j < 2; ++j) {
            HomPoly<K> s(Vars::X, 1);
            for (std::size_t i = 0; i < 4; ++i)
                if (!f_.entry_zero(i, j)) s += f_(i, j) * u[i];
            g.push_back(s);
        }
        return algebra::zero_scheme(g);
    }
    // Intersection of the two conics attached to (u, v) and (u2, v2).
    algebra::ZeroSchemeInfo conic_pair_points(const std::array<K, 4>& u, const std::array<K, 4>& v,
                                              const std::array<K, 4>& u2, const std::array<K, 4>& v2) const {
        return algebra::zero_scheme(std::vector<HomPoly<K>>{conic_eq(u, v), conic_eq(u2, v2)});
    }

private:
    BundleFamily<K> fam_;
    PolyMatrix<K> f_;
};

// E(1) = coker(q : O(-2) -> O^3); f = q : P^2 -> P^2 with Jacobian F.
template <ExactField K>
class Type03Geometry {
public:
    explicit Type03Geometry(const BundleFamily<K>& fam) : fam_(fam), oracle_(fam) {
        detail::require_tag(fam, FamilyTag::Type03General, "type03_geometry");
        F_ = PolyMatrix<K>(Vars::X, {1, 1, 1}, {0, 0, 0});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto d = fam.q[i].derivative(j);
                if (!d.is_zero()) F_.set(i, j, d);
            }
    }

    const PolyMatrix<K>& jacobian() const { return F_; }
    LocusPolynomial<K> ram_cubic() const { return make_locus(LocusKind::R, Provenance::Determinant, F_.det()); }

    // Line through p in the direction of ker dF_p; needs rank F_p = 2 (rank df_p = 1).
    std::array<K, 3> jline_from_ram(std::span<const K> p) const {
        auto Fp_ = F_.evaluate(p);
        if (!algebra::det(Fp_).is_zero()) throw std::invalid_argument("point is not on the ramification curve");
        auto ker = algebra::kernel_basis(Fp_);
        if (ker.size() != 1) throw std::domain_error("degenerate ramification point: rank F_p = 1");
        return normalize3(sheafkit::cross<K>(p, ker[0]));
    }

    // Points of R with rank F_p = 2, from roots of det F along random lines.
    std::vector<std::array<K, 3>> sample_ram_points(std::size_t n, std::uint64_t seed) const
        requires std::is_same_v<K, Fp>
    {
        auto D = F_.det();
        std::vector<std::array<K, 3>> out;
        for (std::uint64_t i = 0; out.size() < n; ++i) {
            if (i > 50 * n + 100) throw std::runtime_error("ramification sampling exhausted");
            std::mt19937_64 rng(task_seed(seed, "type03/ram_points", i));
            auto a = sheafkit::random_nonzero_vec3<K>(rng), b = sheafkit::random_nonzero_vec3<K>(rng);
            if (detail::proportional3<K>(a, b)) continue;
            auto r = algebra::restrict_to_pencil(D, std::span<const K>(a), std::span<const K>(b));
            if (r.is_zero()) continue;
            for (const auto& t : algebra::roots_in_field(r)) {
                std::array<K, 3> p;
                for (int k = 0; k < 3; ++k) p[k] = a[k] + t * b[k];
                if (algebra::rank(F_.evaluate(std::span<const K>(p))) != 2) continue;
                out.push_back(normalize3(p));
                if (out.size() == n) break;
            }
        }
        return out;
    }

    // The conic Z(sigma ^ s) for sections u, v of E(1): (u x v).q = 0.
    ConicForm<K> sigma_wedge_s(const std::array<K, 3>& u, const std::array<K, 3>& v) const {
        auto w = sheafkit::cross<K>(u, v);
        HomPoly<K> c(Vars::X, 2);
        for (int i = 0; i < 3; ++i) c += fam_.q[i] * w[i];
        return ConicForm<K>::from_poly(c);
    }

    // Items i (generic) and ii (jumping) for lines, from E(1)_L = (1,1) or (2,0).
    int classify_line(const std::array<K, 3>& l) const {
        auto st = cohom::splitting_of(sheafkit::pullback(fam_.presented, sheafkit::line_param(l)));
        if (st.parts == std::vector<int>{1, 1}) return 1;
        if (st.parts == std::vector<int>{2, 0}) return 2;
        throw std::logic_error("E(1) on a line splits as " + st.to_string() + ", outside the globally generated range");
    }

    struct ConicClass {
        int item = 0;  // 3: generic, 4: jump size 1, 5: jump size 2
        SplittingType splitting;
        std::optional<std::array<K, 3>> sigma, s;
    };

    // Items iii-v for smooth conics from E(1)_C = (2,2), (3,1), (4,0); item v exhibits sigma, s.
    ConicClass classify(const ConicForm<K>& C) const {
        if (!C.is_smooth()) throw std::invalid_argument("classification needs a smooth conic");
        auto P = sheafkit::parameterized(C);
        ConicClass out;
        out.splitting = cohom::splitting_of(sheafkit::pullback(fam_.presented, *P.param()));
        const auto& parts = out.splitting.parts;
        if (parts == std::vector<int>{2, 2}) out.item = 3;
        else if (parts == std::vector<int>{3, 1}) out.item = 4;
        else if (parts == std::vector<int>{4, 0}) out.item = 5;
        else throw std::logic_error("E(1) on a conic splits as " + out.splitting.to_string());
        // xi = w.q for some w iff C = Z(sigma ^ s) with sigma x s = w.
        Matrix<K> a(6, 3);
        for (int i = 0; i < 3; ++i)
            for (int m = 0; m < 6; ++m) a(m, i) = fam_.q[i].coeff(m);
        std::vector<K> w;
        const bool in_span = algebra::solve(a, std::span<const K>(C.xi()), w);
        if (in_span != (out.item == 5)) throw std::logic_error("Z(sigma ^ s) membership disagrees with jump size 2");
        if (in_span) {
            Matrix<K> wm(1, 3);
            for (int i = 0; i < 3; ++i) wm(0, i) = w[i];
            auto ker = algebra::kernel_basis(wm);
            auto c = sheafkit::cross<K>(ker[0], ker[1]);
            int k = 0;
            while (w[k].is_zero()) ++k;
            K lam = c[k] / w[k];
            std::array<K, 3> sg{ker[0][0] / lam, ker[0][1] / lam, ker[0][2] / lam}, ss{ker[1][0], ker[1][1], ker[1][2]};
            if (!(sigma_wedge_s(sg, ss).poly() == C.poly())) throw std::logic_error("sigma ^ s does not cut out the conic");
            out.sigma = sg;
            out.s = ss;
        }
        return out;
    }

private:
    BundleFamily<K> fam_;
    JumpOracle<K> oracle_;
    PolyMatrix<K> F_;
};

// Closed-form jumping-conic hyperplane of the m12 family. With C restricted to the
// modification line L = {x2 = 0}, C jumps iff xi|_L lies in the span of psi1|_L, psi2|_L.
template <ExactField K>
std::array<K, 3> m12_coefficients(const HomPoly<K>& psi1, const HomPoly<K>& psi2) {
    auto c = [](const HomPoly<K>& p, int e0, int e1) { return p.coeff(algebra::Exps{static_cast<std::uint8_t>(e0), static_cast<std::uint8_t>(e1), 0}); };
    const K p100 = c(psi1, 2, 0), p101 = c(psi1, 1, 1), p111 = c(psi1, 0, 2);
    const K p200 = c(psi2, 2, 0), p201 = c(psi2, 1, 1), p211 = c(psi2, 0, 2);
    return {p101 * p211 - p111 * p201, p111 * p200 - p100 * p211, p100 * p201 - p101 * p200};
}

// Hyperplane in xi for any modification line: coefficient of xi_m is det[psi1|_L; psi2|_L; x^m|_L].
template <ExactField K>
LocusPolynomial<K> m12_hyperplane(const BundleFamily<K>& fam) {
    detail::require_tag(fam, FamilyTag::TypeM12, "m12_hyperplane");
    const auto& l = *fam.line;
    sheafkit::CurveParam<K> g;
    const bool is_x2 = l.coeff(0).is_zero() && l.coeff(1).is_zero();
    if (is_x2) {
        g = {HomPoly<K>::variable(Vars::ST, 0), HomPoly<K>::variable(Vars::ST, 1), HomPoly<K>(Vars::ST, 1)};
    } else {
        g = sheafkit::line_param<K>({l.coeff(0), l.coeff(1), l.coeff(2)});
    }
    const std::vector<HomPoly<K>> gi{g[0], g[1], g[2]};
    auto row = [&](const HomPoly<K>& p) {
        auto r = p.substitute(gi);
        return std::array<K, 3>{r.coeff(0), r.coeff(1), r.coeff(2)};
    };
    auto r1 = row(fam.psi[0]), r2 = row(fam.psi[1]);
    HomPoly<K> h(Vars::XI, 1);
    for (int m = 0; m < 6; ++m) {
        auto r3 = row(HomPoly<K>::monomial(Vars::X, algebra::monomial_basis(3, 2)[m]));
        Matrix<K> M(3, 3);
        for (int j = 0; j < 3; ++j) {
            M(0, j) = r1[j];
            M(1, j) = r2[j];
            M(2, j) = r3[j];
        }
        h.coeff(m) = algebra::det(M);
    }
    return make_locus(LocusKind::J2, Provenance::ClosedForm, h);
}

// Singular points of a plane curve: the common zeros of its partial derivatives.
template <ExactField K>
algebra::ZeroSchemeInfo singular_locus(const HomPoly<K>& P) {
    std::vector<HomPoly<K>> g;
    for (int i = 0; i < P.nv(); ++i) {
        auto d = P.derivative(i);
        if (!d.is_zero()) g.push_back(d.relabel(Vars::X));
    }
    return algebra::zero_scheme(g);
}

template <ExactField K>
bool singular_at(const HomPoly<K>& P, std::span<const K> pt) {
    if (!P.evaluate(pt).is_zero()) return false;
    for (int i = 0; i < P.nv(); ++i)
        if (!P.derivative(i).evaluate(pt).is_zero()) return false;
    return true;
}

namespace detail {

inline Fp2 eval_st(const HomPoly<Fp>& p, Fp2 s, Fp2 t) {
    Fp2 acc;
    for (const auto& [e, c] : p.terms()) {
        Fp2 m(c);
        for (int i = 0; i < e[0]; ++i) m = m * s;
        for (int i = 0; i < e[1]; ++i) m = m * t;
        acc = acc + m;
    }
    return acc;
}

} // namespace detail

// Kernel tests along the modification line L for the type03ng and m12 families.
// Both reduce to a pair c(theta) of binary forms on C with u in K_p iff u.c(theta_p) = 0:
// m12: c = psi(g); type03ng: c_j = alpha_j . a(g) with alpha_j a basis of the degree-1
// vectors orthogonal to g (the O(3) summands of TP^2 on C, via TP^2 = Omega(3)).
class ModificationTests {
public:
    explicit ModificationTests(const BundleFamily<Fp>& fam) : fam_(fam) {
        if (fam.tag != FamilyTag::TypeM12 && fam.tag != FamilyTag::Type03NonGeneral)
            throw std::invalid_argument("modification tests need a type03ng or m12 family");
    }

    struct Verdict {
        bool jumping = false;
        bool tangent = false;
    };

    std::array<HomPoly<Fp>, 2> kernel_forms(const sheafkit::CurveParam<Fp>& g) const {
        const std::vector<HomPoly<Fp>> gi{g[0], g[1], g[2]};
        if (fam_.tag == FamilyTag::TypeM12) return {fam_.psi[0].substitute(gi), fam_.psi[1].substitute(gi)};
        // alpha = (a_i s + b_i t) with alpha . g = 0: four equations in six unknowns.
        Matrix<Fp> m(4, 6);
        const auto s = HomPoly<Fp>::variable(Vars::ST, 0), t = HomPoly<Fp>::variable(Vars::ST, 1);
        for (int i = 0; i < 3; ++i) {
            auto sg = s * g[i], tg = t * g[i];
            for (int r = 0; r < 4; ++r) {
                m(r, i) = sg.coeff(r);
                m(r, 3 + i) = tg.coeff(r);
            }
        }
        auto ker = algebra::kernel_basis(m);
        if (ker.size() != 2) throw std::logic_error("TP^2 on a conic should have two O(3) summands");
        std::array<HomPoly<Fp>, 3> ag;
        for (int i = 0; i < 3; ++i) ag[i] = fam_.modification[i].substitute(gi);
        std::array<HomPoly<Fp>, 2> c;
        for (int j = 0; j < 2; ++j) {
            c[j] = HomPoly<Fp>(Vars::ST, 5);
            for (int i = 0; i < 3; ++i) c[j] += (s * ker[j][i] + t * ker[j][3 + i]) * ag[i];
        }
        return c;
    }

    Verdict test(const ConicForm<Fp>& C) const {
        if (!C.is_smooth()) throw std::invalid_argument("modification test needs a smooth conic");
        auto P = sheafkit::parameterized(C);
        const auto& g = *P.param();
        auto h = fam_.line->substitute({g[0], g[1], g[2]});
        if (h.is_zero()) throw std::invalid_argument("conic contains the modification line");
        auto c = kernel_forms(g);
        // h = A s^2 + B s t + C t^2; its roots are the points of C on L.
        const Fp A = h.coeff(0), B = h.coeff(1), Cc = h.coeff(2);
        Verdict v;
        using Pt = std::array<Fp2, 2>;
        auto det2 = [&](const Pt& p, const Pt& q) {
            return detail::eval_st(c[0], p[0], p[1]) * detail::eval_st(c[1], q[0], q[1]) -
                   detail::eval_st(c[1], p[0], p[1]) * detail::eval_st(c[0], q[0], q[1]);
        };
        auto tangent = [&](const Pt& p, int dir) {
            auto d0 = c[0].derivative(dir), d1 = c[1].derivative(dir);
            return detail::eval_st(c[0], p[0], p[1]) * detail::eval_st(d1, p[0], p[1]) -
                   detail::eval_st(c[1], p[0], p[1]) * detail::eval_st(d0, p[0], p[1]);
        };
        if (A.is_zero()) {
            Pt p{Fp2(Fp(1)), Fp2()};
            if (B.is_zero()) {
                v.tangent = true;
                v.jumping = tangent(p, 1).is_zero();
            } else {
                v.jumping = det2(p, Pt{Fp2(-Cc), Fp2(B)}).is_zero();
            }
            return v;
        }
        const Fp disc = B * B - Fp(4) * A * Cc;
        const Fp den = (Fp(2) * A).inv();
        if (disc.is_zero()) {
            v.tangent = true;
            v.jumping = tangent(Pt{Fp2(-B * den), Fp2(Fp(1))}, 0).is_zero();
            return v;
        }
        Fp2 r = Fp2::sqrt_of(disc);
        Pt p{(Fp2(-B) + r) * Fp2(den), Fp2(Fp(1))}, q{(Fp2(-B) - r) * Fp2(den), Fp2(Fp(1))};
        v.jumping = det2(p, q).is_zero();
        return v;
    }

private:
    BundleFamily<Fp> fam_;
};

} // namespace jumploci::loci
