#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/algebra/interpolate.hpp"
#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/unipoly.hpp"
#include "jumploci/cohom/h1model.hpp"
#include "jumploci/cohom/splitting.hpp"
#include "jumploci/loci/seeding.hpp"
#include "jumploci/sheafkit/conic.hpp"
#include "jumploci/sheafkit/families.hpp"
#include "jumploci/sheafkit/sym2.hpp"

namespace jumploci::loci {

using algebra::ExactField;
using algebra::Fp;
using algebra::HomPoly;
using algebra::Matrix;
using algebra::UniPoly;
using algebra::Vars;
using cohom::SplittingType;
using sheafkit::BundleFamily;
using sheafkit::ConicForm;
using sheafkit::FamilyTag;

enum class LocusKind : std::uint8_t { J1, J2, R, SecondKind };
enum class Provenance : std::uint8_t { Determinant, Interpolated, ClosedForm };

inline const char* locus_kind_name(LocusKind k) {
    switch (k) {
    case LocusKind::J1: return "J1";
    case LocusKind::J2: return "J2";
    case LocusKind::R: return "R";
    case LocusKind::SecondKind: return "second_kind";
    }
    return "?";
}

inline const char* provenance_name(Provenance p) {
    switch (p) {
    case Provenance::Determinant: return "determinant";
    case Provenance::Interpolated: return "interpolated";
    case Provenance::ClosedForm: return "closed_form";
    }
    return "?";
}

// Locus polynomial with lead coefficient 1; the computed polynomial was scale * poly.
template <ExactField K>
struct LocusPolynomial {
    LocusKind kind = LocusKind::J1;
    Provenance provenance = Provenance::Determinant;
    HomPoly<K> poly;
    K scale = K(1);

    int degree() const { return poly.degree(); }
    Vars vars() const { return poly.vars(); }
    HomPoly<K> raw() const { return poly * scale; }
};

template <ExactField K>
LocusPolynomial<K> make_locus(LocusKind kind, Provenance prov, const HomPoly<K>& raw) {
    if (raw.is_zero()) throw std::domain_error("locus polynomial is identically zero");
    return {kind, prov, raw.normalized(), raw.coeff(raw.lead_index())};
}

template <ExactField K>
std::array<K, 3> normalize3(std::array<K, 3> v) {
    for (const auto& c : v)
        if (!c.is_zero()) {
            K inv = c.inv();
            for (auto& x : v) x *= inv;
            return v;
        }
    throw std::invalid_argument("zero vector has no projective class");
}

namespace detail {

template <ExactField K>
std::optional<K> field_sqrt(const K& x) {
    if (x.is_zero()) return K();
    if constexpr (std::is_same_v<K, Fp>) {
        if (!x.is_square()) return std::nullopt;
        return x.sqrt();
    } else {
        const mpq_class& q = x.raw();
        if (sgn(q) < 0) return std::nullopt;
        if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
        return K(algebra::Rational(mpq_class(n, d)));
    }
}

template <ExactField K>
void require_c1(const BundleFamily<K>& fam, int c1, const char* op) {
    if (fam.chern_e.c1 != c1)
        throw std::invalid_argument(std::string(op) + " needs c1 = " + std::to_string(c1) + ", got " +
                                    std::to_string(fam.chern_e.c1));
}

template <ExactField K>
void require_semistable(const BundleFamily<K>& fam) {
    if (cohom::stability_check(fam.bundle) == cohom::Stability::Unstable)
        throw std::invalid_argument("unstable input: the locus is not defined");
}

} // namespace detail

// Components of a rank-2 conic as two lines over the base field, when they are defined there.
template <ExactField K>
std::optional<std::array<std::array<K, 3>, 2>> split_line_pair(const ConicForm<K>& C) {
    if (C.gram_rank() != 2) throw std::invalid_argument("not a pair of distinct lines");
    auto ker = algebra::kernel_basis(C.gram());
    const auto& s = ker.at(0);
    int j = 0;
    while (s[j].is_zero()) ++j;
    // The line x_j = 0 misses the vertex s; restrict C to it.
    std::array<K, 3> ea{}, eb{};
    ea[(j + 1) % 3] = K(1);
    eb[(j + 2) % 3] = K(1);
    const K A = C.evaluate(ea), Cc = C.evaluate(eb), B = K(2) * C.bilinear(ea, eb);
    std::array<std::array<K, 3>, 2> pts;
    auto point = [&](K sig, K tau) {
        std::array<K, 3> r;
        for (int i = 0; i < 3; ++i) r[i] = sig * ea[i] + tau * eb[i];
        return r;
    };
    if (A.is_zero()) {
        pts[0] = point(K(1), K());
        pts[1] = point(-Cc, B);
    } else {
        auto sq = detail::field_sqrt(B * B - K(4) * A * Cc);
        if (!sq) return std::nullopt;
        K den = (K(2) * A).inv();
        pts[0] = point((-B + *sq) * den, K(1));
        pts[1] = point((-B - *sq) * den, K(1));
    }
    std::array<std::array<K, 3>, 2> lines;
    for (int i = 0; i < 2; ++i) lines[i] = normalize3(sheafkit::cross<K>(s, pts[i]));
    return lines;
}

struct JumpInfo {
    bool jumping = false;
    // Jump size for lines and smooth conics.
    std::optional<int> a;
    // Splitting of E on the curve, P^1 units.
    std::optional<SplittingType> splitting;
    // splitting | component_lines | sym2 | divisor
    std::string method;
};

// Jumping tests for one family; the S^2 multiplication model is built on first use.
template <ExactField K>
class JumpOracle {
public:
    explicit JumpOracle(const BundleFamily<K>& fam) : fam_(fam), alpha_(std::make_shared<Lazy>()) {
        if (fam.chern_e.c1 != 0 && fam.chern_e.c1 != -1)
            throw cohom::NormalizeFirst("normalize first: c1 = " + std::to_string(fam.chern_e.c1));
    }

    const BundleFamily<K>& family() const { return fam_; }
    int c1() const { return fam_.chern_e.c1; }
    int c2() const { return static_cast<int>(fam_.chern_e.c2); }

    SplittingType splitting_on(const sheafkit::CurveParam<K>& g) const {
        return cohom::splitting_of(sheafkit::pullback(fam_.bundle, g));
    }

    // E_L = O(a) + O(-a) for c1 = 0 and O(a) + O(-1-a) for c1 = -1; jumping iff a > 0.
    JumpInfo line(const std::array<K, 3>& l) const {
        JumpInfo info;
        info.splitting = splitting_on(sheafkit::line_param(l));
        info.a = info.splitting->parts.at(0);
        info.jumping = *info.a > 0;
        info.method = "splitting";
        return info;
    }

    // Smooth: E_C = O(a) + O(-a) (c1 = 0) or O(a-1) + O(-a-1) (c1 = -1) in P^1 units.
    // Singular with c1 = 0: a component line jumps. Any conic with c1 = -1: h0(C; E_C) > 0.
    JumpInfo conic(const ConicForm<K>& C) const {
        const std::size_t rk = C.gram_rank();
        JumpInfo info;
        if (rk == 3) {
            auto P = sheafkit::parameterized(C);
            info.splitting = splitting_on(*P.param());
            info.a = info.splitting->parts.at(0) + (c1() == -1 ? 1 : 0);
            info.jumping = *info.a > 0;
            info.method = "splitting";
        }
        if (c1() == -1) {
            const auto h = cohom::h0_on_divisor(fam_.bundle, C.poly(), 0);
            if (info.a && *info.a != h) throw std::logic_error("divisor h0 disagrees with the splitting on a smooth conic");
            info.jumping = h > 0;
            if (!info.a) info.method = "divisor";
            return info;
        }
        if (rk == 3) return info;
        if (rk == 1) {
            auto g = C.gram();
            std::size_t r = 0;
            while (g(r, 0).is_zero() && g(r, 1).is_zero() && g(r, 2).is_zero()) ++r;
            info.jumping = line(normalize3<K>({g(r, 0), g(r, 1), g(r, 2)})).jumping;
            info.method = "component_lines";
            return info;
        }
        if (auto ls = split_line_pair(C)) {
            info.jumping = line((*ls)[0]).jumping || line((*ls)[1]).jumping;
            info.method = "component_lines";
        } else {
            // Conjugate components: one jumps iff both do; decided by h1(C; S^2 E_C) > 0.
            info.jumping = h1_sym2(C) > 0;
            info.method = "sym2";
        }
        return info;
    }

    // alpha(xi) : H^1(S^2E(-2)) -> H^1(S^2E), in dual form; c1 = 0 only.
    const cohom::MultiplicationModel<K>& alpha() const {
        if (c1() != 0) throw std::invalid_argument("the S^2 criterion needs c1 = 0");
        std::call_once(alpha_->once, [&] { alpha_->mm.emplace(sheafkit::sym2_resolution(fam_.bundle), -3, 2); });
        return *alpha_->mm;
    }
    // Forward matrix of alpha(xi), h^1(S^2E) x h^1(S^2E(-2)).
    Matrix<K> alpha_forward(std::span<const K> xi) const { return alpha().matrix(xi).transpose(); }
    // h^1(C; S^2 E_C) = corank of alpha(xi); H^0(S^2E(-2)) = H^2(S^2E(-2)) = 0 by semistability.
    std::size_t h1_sym2(const ConicForm<K>& C) const {
        const auto& mm = alpha();
        return mm.source_dim() - algebra::rank(mm.matrix(std::span<const K>(C.xi())));
    }

private:
    struct Lazy {
        std::once_flag once;
        std::optional<cohom::MultiplicationModel<K>> mm;
    };
    BundleFamily<K> fam_;
    std::shared_ptr<Lazy> alpha_;
};

// The pencil t -> xi0 + t xi1 in the P^5 of conics.
template <ExactField K>
struct PencilProbe {
    std::array<K, 6> xi0{}, xi1{};

    PencilProbe(const std::array<K, 6>& a, const std::array<K, 6>& b) : xi0(a), xi1(b) {
        Matrix<K> m(2, 6);
        for (int i = 0; i < 6; ++i) {
            m(0, i) = a[i];
            m(1, i) = b[i];
        }
        if (algebra::rank(m) != 2) throw std::invalid_argument("pencil endpoints must be linearly independent");
    }
    std::array<K, 6> point(const K& t) const {
        std::array<K, 6> x;
        for (int i = 0; i < 6; ++i) x[i] = xi0[i] + t * xi1[i];
        return x;
    }
    ConicForm<K> at(const K& t) const { return ConicForm<K>(point(t)); }
};

template <ExactField K>
struct MultiplicityReport {
    int ord = 0;
    int a = 0;
    bool ok = false;  // ord >= a
    // c1 = -1: ord over roots in the field, plus the order at t = infinity.
    std::optional<int> root_sum;
    std::optional<int> remainder_degree;  // degree of the root-free factor
    // c1 = 0: ord at t0 of the gcd of the maximal minors of alpha.
    std::optional<int> alpha_gcd_ord;
};

namespace detail {

// gcd over t of the maximal minors of A0 + t A1, from determinants of random square compressions.
template <ExactField K>
UniPoly<K> maximal_minor_gcd(const Matrix<K>& A0, const Matrix<K>& A1, std::uint64_t seed) {
    const bool tall = A0.rows() >= A0.cols();
    const std::size_t k = tall ? A0.cols() : A0.rows(), longdim = tall ? A0.rows() : A0.cols();
    std::mt19937_64 rng(seed);
    UniPoly<K> g;
    for (int trial = 0; trial < 4; ++trial) {
        auto R = Matrix<K>::random(k, longdim, rng);
        std::vector<K> ts, vs;
        for (std::size_t i = 0; i <= k; ++i) {
            K t(static_cast<std::int64_t>(i));
            Matrix<K> A(A0.rows(), A0.cols());
            for (std::size_t r = 0; r < A.rows(); ++r)
                for (std::size_t c = 0; c < A.cols(); ++c) A(r, c) = A0(r, c) + t * A1(r, c);
            ts.push_back(t);
            vs.push_back(algebra::det(tall ? R * A : R * A.transpose()));
        }
        auto d = algebra::interpolate<K>(ts, vs);
        g = g.is_zero() ? d : UniPoly<K>::gcd(g, d);
    }
    return g;
}

} // namespace detail

// Intersection multiplicity at t0 of the pencil with the hypersurface P, against the jump size there.
template <ExactField K>
MultiplicityReport<K> pencil_multiplicity(const JumpOracle<K>& oracle, const LocusPolynomial<K>& P,
                                          const PencilProbe<K>& probe, const K& t0, std::uint64_t seed = 1) {
    if (P.vars() != Vars::XI) throw std::invalid_argument("pencil multiplicity needs a locus in conic coordinates");
    auto r = algebra::restrict_to_pencil(P.poly, std::span<const K>(probe.xi0), std::span<const K>(probe.xi1));
    MultiplicityReport<K> rep;
    rep.ord = r.ord_at(t0);
    auto info = oracle.conic(probe.at(t0));
    rep.a = info.a ? std::max(*info.a, 0) : (info.jumping ? 1 : 0);
    rep.ok = rep.ord >= rep.a;
    if (oracle.c1() == -1 && P.provenance == Provenance::Determinant) {
        if constexpr (std::is_same_v<K, Fp>) {
            int sum = P.degree() - r.degree();
            for (const auto& t : algebra::roots_in_field(r)) sum += r.ord_at(t);
            rep.root_sum = sum;
            rep.remainder_degree = P.degree() - sum;
        }
    }
    if (oracle.c1() == 0) {
        auto A0 = oracle.alpha_forward(std::span<const K>(probe.xi0));
        auto A1 = oracle.alpha_forward(std::span<const K>(probe.xi1));
        auto g = detail::maximal_minor_gcd(A0, A1, task_seed(seed, "pencil_multiplicity/alpha", 0));
        if (!g.is_zero()) rep.alpha_gcd_ord = g.ord_at(t0);
    }
    return rep;
}

template <ExactField K>
JumpInfo jump_size_conic(const BundleFamily<K>& fam, const ConicForm<K>& C) {
    return JumpOracle<K>(fam).conic(C);
}

template <ExactField K>
JumpInfo jump_size_line(const BundleFamily<K>& fam, const std::array<K, 3>& l) {
    return JumpOracle<K>(fam).line(l);
}

// det(l : H^1(E(-2)) -> H^1(E(-1))), a c2 x c2 matrix linear in l.
template <ExactField K>
LocusPolynomial<K> j1_poly_c0(const BundleFamily<K>& fam) {
    detail::require_c1(fam, 0, "j1_poly_c0");
    detail::require_semistable(fam);
    cohom::MultiplicationModel<K> mm(fam.bundle, -2, 1);
    if (mm.source_dim() != mm.target_dim()) throw std::logic_error("jumping-line matrix is not square");
    auto P = mm.symbolic(Vars::L).det();
    if (P.is_zero()) throw std::domain_error("all lines jumping (non-semistable or degenerate input)");
    return make_locus(LocusKind::J1, Provenance::Determinant, P);
}

// det(xi : H^1(E(-2)) -> H^1(E)), a (c2-1) x (c2-1) matrix linear in xi.
template <ExactField K>
LocusPolynomial<K> j2_det_cm1(const BundleFamily<K>& fam) {
    detail::require_c1(fam, -1, "j2_det_cm1");
    detail::require_semistable(fam);
    cohom::MultiplicationModel<K> mm(fam.bundle, -3, 2);
    if (mm.source_dim() != mm.target_dim()) throw std::logic_error("jumping-conic matrix is not square");
    auto P = mm.symbolic(Vars::XI).det();
    if (P.is_zero()) throw std::domain_error("all conics jumping (degenerate input)");
    return make_locus(LocusKind::J2, Provenance::Determinant, P);
}

// xi = coefficients of (l0 x0 + l1 x1 + l2 x2)^2.
template <ExactField K>
std::vector<HomPoly<K>> veronese_images() {
    std::array<HomPoly<K>, 3> l;
    for (int i = 0; i < 3; ++i) l[i] = HomPoly<K>::variable(Vars::L, i);
    const K two(2);
    return {l[0] * l[0], l[0] * l[1] * two, l[0] * l[2] * two, l[1] * l[1], l[1] * l[2] * two, l[2] * l[2]};
}

template <ExactField K>
LocusPolynomial<K> second_kind_curve(const LocusPolynomial<K>& j2) {
    if (j2.vars() != Vars::XI) throw std::invalid_argument("second-kind curve needs a locus in conic coordinates");
    auto raw = j2.raw().substitute(veronese_images<K>());
    return make_locus(LocusKind::SecondKind, j2.provenance, raw);
}

// Jumping lines for c1 = -1: l with a nonzero kernel of l : H^1(E(-2)) -> H^1(E(-1)).
template <ExactField K>
std::vector<std::array<K, 3>> jlines_cm1(const BundleFamily<K>& fam, std::uint64_t seed = 1) {
    detail::require_c1(fam, -1, "jlines_cm1");
    detail::require_semistable(fam);
    cohom::MultiplicationModel<K> mm(fam.bundle, -2, 1);
    const std::size_t nt = mm.target_dim(), ns = mm.source_dim();
    // Forward matrices F_i : k^nt -> k^ns for l = e_i.
    std::array<Matrix<K>, 3> F;
    for (int i = 0; i < 3; ++i) F[i] = mm.monomial_matrices()[i].transpose();
    // B(v) = [F_0 v, F_1 v, F_2 v]; l is jumping for some v iff B(v) l = 0.
    auto B = [&](const std::vector<K>& v) {
        Matrix<K> b(ns, 3);
        for (int i = 0; i < 3; ++i)
            for (std::size_t r = 0; r < ns; ++r) {
                K acc;
                for (std::size_t c = 0; c < nt; ++c) acc += F[i](r, c) * v[c];
                b(r, i) = acc;
            }
        return b;
    };
    std::vector<std::array<K, 3>> out;
    auto take = [&](const Matrix<K>& b) {
        auto ker = algebra::kernel_basis(b);
        if (ker.empty()) return;
        if (ker.size() > 1) throw std::domain_error("non-generic: jumping lines form a curve");
        auto l = normalize3<K>({ker[0][0], ker[0][1], ker[0][2]});
        for (const auto& m : out)
            if (m == l) return;
        out.push_back(l);
    };
    if (nt == 0) return out;
    if (nt == 1) {
        take(B({K(1)}));
    } else if (nt == 2) {
        if constexpr (!std::is_same_v<K, Fp>) {
            throw std::domain_error("jumping lines for c2 = 3 need a finite field");
        } else {
            // rank B(1, t) < 3: gcd of two random 3 x 3 row combinations, degree <= 3 in t.
            std::mt19937_64 rng(task_seed(seed, "jlines_cm1", 0));
            std::array<UniPoly<K>, 2> d;
            for (auto& di : d) {
                auto R = Matrix<K>::random(3, ns, rng);
                std::vector<K> ts, vs;
                for (int t = 0; t <= 3; ++t) {
                    ts.emplace_back(t);
                    vs.push_back(algebra::det(R * B({K(1), K(t)})));
                }
                di = algebra::interpolate<K>(ts, vs);
            }
            auto g = UniPoly<K>::gcd(d[0], d[1]);
            if (g.is_zero()) throw std::domain_error("non-generic: jumping lines form a curve");
            for (const auto& t : algebra::roots_in_field(g)) take(B({K(1), t}));
            take(B({K(), K(1)}));
        }
    } else {
        throw std::domain_error("jumping lines are only enumerated for c2 <= 3");
    }
    JumpOracle<K> oracle(fam);
    for (const auto& l : out)
        if (!oracle.line(l).jumping) throw std::logic_error("kernel line fails the splitting test");
    return out;
}

} // namespace jumploci::loci
