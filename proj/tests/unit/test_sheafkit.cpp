#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "jumploci/sheafkit/conic.hpp"
#include "jumploci/sheafkit/sym2.hpp"

using namespace jumploci;
using namespace jumploci::sheafkit;
using algebra::Fp;
using algebra::Rational;
using fixtures::P;

namespace {

// (1 + a h)(1 + b h)... divided by the source classes, expanded by hand mod h^3.
ChernClass chern_by_series(const std::vector<int>& f0, const std::vector<int>& f1) {
    // log-free expansion: total class of F0 times inverse of total class of F1.
    std::int64_t e1 = 0, e2 = 0;
    for (int a : f0) {
        e2 += e1 * a;
        e1 += a;
    }
    std::int64_t s1 = 0, s2 = 0;
    for (int b : f1) {
        s2 += s1 * b;
        s1 += b;
    }
    // (1 + s1 h + s2 h^2)^{-1} = 1 - s1 h + (s1^2 - s2) h^2
    std::int64_t i1 = -s1, i2 = s1 * s1 - s2;
    return {e1 + i1, e2 + e1 * i1 + i2};
}

template <class K>
Presentation<K> twisted_pullback(const Presentation<K>& p, const CurveParam<K>& g, int k) {
    return pullback(p.twisted(k), g);
}

} // namespace

TEST_CASE("chern classes of presentations") {
    PolyMatrix<Fp> m(Vars::X, {0, 0, 0, 0}, {-1, -1});
    auto c = chern(Presentation<Fp>::coker(Ambient::P2, m));
    CHECK(c == ChernClass{2, 3});
    CHECK(chern_twist(c, 2, -1) == ChernClass{0, 2});
    CHECK(chern(Presentation<Fp>::split(Ambient::P2, {3, -5})) == ChernClass{-2, -15});
    CHECK(chern_by_series({0, 0, 0, 0}, {-1, -1}) == ChernClass{2, 3});
    CHECK(fixtures::em12<Fp>().chern_e == ChernClass{-1, 2});
    CHECK(fixtures::e02<Fp>().chern_e == ChernClass{0, 2});
    CHECK(fixtures::e03<Fp>().chern_e == ChernClass{0, 3});
    CHECK(fixtures::e03ng<Fp>().chern_e == ChernClass{0, 3});
    auto fam = fixtures::em12<Fp>();
    const auto& t = fam.bundle.terms();
    CHECK(chern(fam.bundle) == chern_by_series(t[1], t[0]));
}

TEST_CASE("euler characteristic matches the closed forms") {
    std::vector<BundleFamily<Fp>> fams{fixtures::e02<Fp>(), fixtures::e03<Fp>(), fixtures::e03ng<Fp>(),
                                       fixtures::em12<Fp>()};
    for (const auto& fam : fams)
        for (int k = -6; k <= 6; ++k) {
            CHECK(euler_char(fam.bundle, k) == riemann_roch_p2(2, fam.chern_e, k));
            CHECK(euler_char(fam.bundle, k) == riemann_roch_rank2(fam.chern_e, k));
        }
    CHECK(euler_char(fixtures::e02<Fp>().bundle, 0) == 0);
    // Restriction of a (-1, 2) bundle to a conic: chi(E_C(k)) = 4k.
    std::mt19937_64 rng(1);
    auto C = random_smooth_conic<Fp>(rng);
    auto r = pullback(fixtures::em12<Fp>().bundle, *C.param());
    for (int k = -6; k <= 6; ++k) CHECK(euler_char(r, 2 * k) == 4 * k);
    for (int d = -4; d <= 4; ++d) CHECK(euler_char(Presentation<Fp>::split(Ambient::P1, {d}), 0) == d + 1);
}

TEST_CASE("family constructors accept the fixtures and reject degenerate input") {
    auto e02 = fixtures::e02<Fp>();
    CHECK(e02.tag == FamilyTag::Type02);
    CHECK(cohom::hypercohomology(e02.presented, 0).h0 == 4);

    PolyMatrix<Fp> prop(Vars::X, {0, 0, 0, 0}, {-1, -1});
    const char* col[] = {"x0", "x1", "x2", "x0 + x1"};
    for (int i = 0; i < 4; ++i) {
        prop.set(i, 0, P<Fp>(col[i]));
        prop.set(i, 1, P<Fp>(col[i]) * Fp(2));
    }
    CHECK_THROWS_WITH_AS(make_type02(prop), doctest::Contains("not a bundle presentation"), FamilyError);

    auto e03 = fixtures::e03<Fp>();
    CHECK(cohom::hypercohomology(e03.presented, 0).h0 == 3);
    CHECK_THROWS_WITH_AS(make_type03_general<Fp>({P<Fp>("x0^2"), P<Fp>("x0*x1"), P<Fp>("x0*x2")}),
                         doctest::Contains("map not finite"), FamilyError);

    auto q = P<Fp>("x0*x1 + x2^2");
    CHECK_THROWS_AS(make_type03_nongeneral<Fp>(P<Fp>("x2"), {P<Fp>("x1") * q, -(P<Fp>("x0") * q), P<Fp>("x0") * q}),
                    FamilyError);
    CHECK_THROWS_WITH_AS(make_type03_nongeneral<Fp>(P<Fp>("x2"), {P<Fp>("x0^3"), P<Fp>("x1^3"), P<Fp>("x2^3")}),
                         doctest::Contains("compatibility"), FamilyError);

    auto em12 = fixtures::em12<Fp>();
    CHECK(cohom::hypercohomology(em12.bundle, 0).h0 == 0);
    CHECK_THROWS_WITH_AS(make_m12<Fp>(P<Fp>("x2"), {P<Fp>("x0^2"), P<Fp>("x0*x1")}),
                         doctest::Contains("psi not surjective"), FamilyError);
}

TEST_CASE("non-general type: derived coker form agrees with the monad") {
    auto fam = fixtures::e03ng<Fp>();
    REQUIRE(fam.monad);
    for (int k = -5; k <= 5; ++k) {
        auto a = cohom::hypercohomology(fam.presented, k);
        auto b = cohom::hypercohomology(*fam.monad, k);
        CHECK(a.h0 == b.h0);
        CHECK(a.h1 == b.h1);
        CHECK(a.h2 == b.h2);
    }
    // Restricted to the modification line, E(1) is O(3) + O(-1): h0 at twist -1 is 3,
    // at twist -4 it is 0, and h0 of O(2) + O(-2) at twist -2 is 3.
    CHECK(chern(*fam.monad) == ChernClass{2, 4});
}

TEST_CASE("coordinate changes preserve validity and Chern classes") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        auto A = random_invertible<Fp>(rng);
        auto im = linear_change(A);
        auto e02 = fixtures::e02<Fp>();
        auto f2 = make_type02(e02.f->substitute(im));
        CHECK(f2.chern_e == e02.chern_e);
        auto e03 = fixtures::e03<Fp>();
        std::vector<HomPoly<Fp>> q;
        for (const auto& p : e03.q) q.push_back(p.substitute(im));
        CHECK(make_type03_general(q).chern_e == e03.chern_e);
        auto ng = fixtures::e03ng<Fp>();
        // psi pairs with x, so it transforms as A^T psi(A x).
        std::vector<HomPoly<Fp>> psi;
        for (int i = 0; i < 3; ++i) {
            HomPoly<Fp> acc(Vars::X, 3);
            for (int j = 0; j < 3; ++j) acc += ng.psi[j].substitute(im) * A(j, i);
            psi.push_back(acc);
        }
        CHECK(make_type03_nongeneral(ng.line->substitute(im), psi).chern_e == ng.chern_e);
        auto m = fixtures::em12<Fp>();
        std::vector<HomPoly<Fp>> psi2;
        for (const auto& p : m.psi) psi2.push_back(p.substitute(im));
        CHECK(make_m12(m.line->substitute(im), psi2).chern_e == m.chern_e);
    }
}

TEST_CASE("generic families normalize c1") {
    PolyMatrix<Fp> m(Vars::X, {1, 1, 1}, {-1});
    m.set(0, 0, P<Fp>("x0^2"));
    m.set(1, 0, P<Fp>("x1^2"));
    m.set(2, 0, P<Fp>("x2^2"));
    auto fam = make_generic(Presentation<Fp>::coker(Ambient::P2, m));
    CHECK(fam.chern_e.c1 == 0);
    CHECK(fam.twist == 2);
    CHECK(fam.chern_e == fixtures::e03<Fp>().chern_e);
    CHECK_THROWS_AS(make_generic(Presentation<Fp>::split(Ambient::P2, {0, 0, 0})), FamilyError);
}

TEST_CASE("symmetric square resolution") {
    auto e02 = fixtures::e02<Fp>();
    auto s = sym2_resolution(e02.bundle);
    CHECK(s.terms()[0] == std::vector<int>{-4});
    CHECK(s.terms()[1] == std::vector<int>(8, -3));
    CHECK(s.terms()[2] == std::vector<int>(10, -2));
    CHECK(s.rank() == 3);
    CHECK(chern(s) == ChernClass{0, 8});
    std::mt19937_64 rng(2);
    s.validate(rng, 16);
    for (const auto& fam : {fixtures::e03<Fp>(), fixtures::em12<Fp>(), fixtures::e03ng<Fp>()}) {
        auto r = sym2_resolution(fam.bundle);
        r.validate(rng, 16);
        auto c = chern(r);
        CHECK(c.c1 == 3 * fam.chern_e.c1);
        if (fam.chern_e.c1 == 0) CHECK(c.c2 == 4 * fam.chern_e.c2);
        for (int k = -3; k <= 3; ++k) CHECK(euler_char(r, k) == riemann_roch_p2(3, c, k));
    }
    auto triv = sym2_resolution(Presentation<Fp>::split(Ambient::P2, {0, 0}));
    CHECK(triv.kind() == Kind::Coker);
    CHECK(triv.terms()[1] == std::vector<int>{0, 0, 0});
    CHECK_THROWS(sym2_resolution(Presentation<Fp>::split(Ambient::P2, {0, 0, 0})));
}

TEST_CASE("conic forms and parameterizations") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 20; ++i) {
        auto C = random_smooth_conic<Fp>(rng);
        CHECK(C.is_smooth());
        REQUIRE(C.param());
        auto bare = ConicForm<Fp>(C.xi());
        auto pc = parameterized(bare);
        REQUIRE(pc.param());
        CHECK(param_is_valid(*pc.param()));
        CHECK(C.poly().substitute({(*pc.param())[0], (*pc.param())[1], (*pc.param())[2]}).is_zero());
    }
    auto dl = ConicForm<Fp>::double_line({Fp(0), Fp(0), Fp(1)});
    CHECK(dl.gram_rank() == 1u);
    CHECK(dl.xi()[5] == Fp(1));
    CHECK(ConicForm<Fp>::line_pair({Fp(1), Fp(0), Fp(0)}, {Fp(0), Fp(1), Fp(0)}).gram_rank() == 2u);
    CHECK_THROWS(ConicForm<Fp>(std::array<Fp, 6>{}));

    auto qc = ConicForm<Rational>::from_poly(algebra::parse_hompoly<Rational>("x0^2 + x1^2 - x2^2", Vars::X));
    auto qp = parameterized(qc);
    REQUIRE(qp.param());
    auto l = line_param<Fp>({Fp(1), Fp(2), Fp(3)});
    for (int s = 0; s < 3; ++s) {
        std::vector<Fp> st{Fp(s), Fp(1)};
        CHECK((l[0].evaluate(st) + Fp(2) * l[1].evaluate(st) + Fp(3) * l[2].evaluate(st)).is_zero());
    }
}

TEST_CASE("pullback bookkeeping") {
    std::mt19937_64 rng(31);
    auto C = random_smooth_conic<Fp>(rng);
    const auto& g = *C.param();
    auto triv = pullback(Presentation<Fp>::split(Ambient::P2, {0, 0}), g);
    CHECK(triv.terms()[1] == std::vector<int>{0, 0});
    auto e = pullback(fixtures::e02<Fp>().presented, g);
    CHECK(e.terms()[0] == std::vector<int>{-2, -2});
    CHECK(e.terms()[1] == std::vector<int>{0, 0, 0, 0});
    auto em = fixtures::em12<Fp>().bundle;
    for (int k = -2; k <= 2; ++k) {
        auto a = twisted_pullback(em, g, k);
        auto b = pullback(em, g).twisted(2 * k);
        CHECK(a.terms() == b.terms());
        for (std::size_t i = 0; i < a.maps().size(); ++i) CHECK(a.maps()[i](0, 0) == b.maps()[i](0, 0));
    }
    CurveParam<Fp> bad{HomPoly<Fp>::variable(Vars::ST, 0), HomPoly<Fp>::variable(Vars::ST, 0) * Fp(2),
                       HomPoly<Fp>::variable(Vars::ST, 0) * Fp(3)};
    CHECK_THROWS(pullback(em, bad));
}
