#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "jumploci/algebra/field.hpp"
#include "jumploci/algebra/fp2.hpp"
#include "jumploci/algebra/hompoly.hpp"
#include "jumploci/algebra/interpolate.hpp"
#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/polymatrix.hpp"
#include "jumploci/algebra/polyparse.hpp"
#include "jumploci/algebra/polysolve.hpp"
#include "jumploci/algebra/unipoly.hpp"
#include "jumploci/algebra/zero_scheme.hpp"

using namespace jumploci::algebra;

namespace {

// Leibniz expansion over all permutations.
template <class K>
K leibniz_det(const Matrix<K>& m) {
    std::vector<int> perm(m.rows());
    std::iota(perm.begin(), perm.end(), 0);
    K acc;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
        K t(1);
        for (std::size_t i = 0; i < perm.size(); ++i) t *= m(i, perm[i]);
        acc += (inv % 2) ? -t : t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

HomPoly<Fp> px(const char* s) { return parse_hompoly<Fp>(s, Vars::X); }

} // namespace

TEST_CASE("fp arithmetic against brute force in a small field") {
    ModulusGuard g(101);
    for (std::uint32_t a = 1; a < 101; ++a) {
        Fp x = Fp::from_rep(a);
        CHECK((x * x.inv()).is_one());
        int squares = 0;
        for (std::uint32_t b = 0; b < 101; ++b) squares += (Fp::from_rep(b) * Fp::from_rep(b)) == x;
        CHECK(x.is_square() == (squares > 0));
        if (x.is_square()) CHECK(x.sqrt() * x.sqrt() == x);
    }
    CHECK(Fp(-1).symmetric() == -1);
}

TEST_CASE("modulus guard restores the default") {
    {
        ModulusGuard g(7);
        CHECK(Fp::modulus() == 7u);
        CHECK(Fp(10).value() == 3u);
    }
    CHECK(Fp::modulus() == 32003u);
    CHECK_THROWS(Fp::set_modulus(15));
}

TEST_CASE("rationals parse and print canonically") {
    CHECK(Rational::parse("6/4").to_string() == "3/2");
    CHECK(Rational::parse("-3").to_string() == "-3/1");
    CHECK((Rational::parse("1/3") + Rational::parse("1/6")).to_string() == "1/2");
    CHECK(FieldTraits<Fp>::parse("1/2") * Fp(2) == Fp(1));
    CHECK(FieldTraits<Fp>::parse("-5") == Fp(-5));
}

TEST_CASE("fp2 is a field extension containing square roots") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Fp a = Fp::random(rng);
        Fp2 r = Fp2::sqrt_of(a);
        CHECK(r * r == Fp2(a));
        Fp2 z(Fp::random_nonzero(rng), Fp::random(rng));
        CHECK(z * z.inv() == Fp2(Fp(1)));
    }
}

TEST_CASE("monomial index matches basis position") {
    for (int n = 1; n <= 6; ++n)
        for (int d = 0; d <= 5; ++d) {
            const auto& b = monomial_basis(n, d);
            CHECK(b.size() == count_monomials(n, d));
            for (std::size_t i = 0; i < b.size(); ++i) CHECK(monomial_index(b[i], n) == i);
        }
    CHECK(count_monomials(3, -1) == 0u);
    // Conic coefficients line up with xi00, xi01, xi02, xi11, xi12, xi22.
    auto p = px("2*x0^2 + 3*x0*x1 + 5*x0*x2 + 7*x1^2 + 11*x1*x2 + 13*x2^2");
    for (int i = 0; i < 6; ++i) CHECK(p.coeff(i) == Fp(std::vector<int>{2, 3, 5, 7, 11, 13}[i]));
}

TEST_CASE("polynomial products agree with pointwise products") {
    std::mt19937_64 rng(11);
    auto f = px("x0^2 - 3*x1*x2 + x2^2");
    auto g = px("x0 + 2*x1 - x2");
    for (int i = 0; i < 20; ++i) {
        std::vector<Fp> pt{Fp::random(rng), Fp::random(rng), Fp::random(rng)};
        CHECK((f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt));
        CHECK((f + f).evaluate(pt) == Fp(2) * f.evaluate(pt));
    }
    CHECK_THROWS(f + g);
}

TEST_CASE("parser round-trips and rejects bad input") {
    auto p = px("(x0 + x1)^3 - x2^3");
    CHECK(px(p.to_string().c_str()) == p);
    auto q = parse_hompoly<Rational>("1/2*x0*x1 - 3/4*x2^2", Vars::X, 2);
    CHECK(parse_hompoly<Rational>(q.to_string(), Vars::X) == q);
    CHECK_THROWS_AS(parse_hompoly<Fp>("x0 + x1^2", Vars::X), std::invalid_argument);
    CHECK_THROWS_AS(parse_hompoly<Fp>("x0 + y", Vars::X), PolyParseError);
    CHECK_THROWS_AS(parse_hompoly<Fp>("x0 +", Vars::X), PolyParseError);
    CHECK_THROWS(parse_hompoly<Fp>("x0^2", Vars::X, 3));
    CHECK(parse_hompoly<Fp>("xi01 - 2*xi22", Vars::XI).coeff(1) == Fp(1));
}

TEST_CASE("substitution and derivatives") {
    auto p = px("x0^2*x1 + x2^3");
    auto s = HomPoly<Fp>::variable(Vars::ST, 0), t = HomPoly<Fp>::variable(Vars::ST, 1);
    auto r = p.substitute({s, t, s + t});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        Fp a = Fp::random(rng), b = Fp::random(rng);
        std::vector<Fp> pt{a, b, a + b};
        std::vector<Fp> st{a, b};
        CHECK(r.evaluate(st) == p.evaluate(pt));
    }
    // Euler identity sum x_i d_i p = deg p * p.
    HomPoly<Fp> e(Vars::X, 3);
    for (int i = 0; i < 3; ++i) e += HomPoly<Fp>::variable(Vars::X, i) * p.derivative(i);
    CHECK(e == p * Fp(3));
}

TEST_CASE("determinants agree with the Leibniz expansion") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 5; ++n) {
        auto m = Matrix<Fp>::random(n, n, rng);
        CHECK(det(m) == leibniz_det(m));
        auto q = Matrix<Rational>::random(n, n, rng);
        CHECK(det(q) == leibniz_det(q));
    }
    Matrix<Fp> sing{{Fp(1), Fp(2)}, {Fp(2), Fp(4)}};
    CHECK(det(sing).is_zero());
    CHECK(rank(sing) == 1u);
}

TEST_CASE("kernels are annihilated and complement the rank") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
        auto a = Matrix<Fp>::random(r, 2, rng) * Matrix<Fp>::random(2, c, rng);
        auto ker = kernel_basis(a);
        CHECK(ker.size() + rank(a) == c);
        for (const auto& v : ker) {
            auto w = a.apply(v);
            CHECK(std::all_of(w.begin(), w.end(), [](const Fp& x) { return x.is_zero(); }));
        }
    }
}

TEST_CASE("solve and inverse") {
    std::mt19937_64 rng(13);
    auto a = Matrix<Rational>::random(4, 4, rng);
    auto ai = inverse(a);
    CHECK(a * ai == Matrix<Rational>::identity(4));
    Matrix<Fp> inc{{Fp(1), Fp(1)}, {Fp(1), Fp(1)}};
    std::vector<Fp> b{Fp(1), Fp(2)}, x;
    CHECK_FALSE(solve(inc, std::span<const Fp>(b), x));
}

TEST_CASE("symbolic determinant agrees with pointwise determinants") {
    std::mt19937_64 rng(17);
    for (int n : {2, 3, 7}) {
        std::vector<int> rt(n, 1), ct(n, 0);
        PolyMatrix<Fp> m(Vars::X, rt, ct);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::array<Fp, 3> c{Fp::random(rng), Fp::random(rng), Fp::random(rng)};
                m.set(i, j, HomPoly<Fp>::linear(Vars::X, c));
            }
        auto d = m.det();
        CHECK(d.degree() == n);
        for (int k = 0; k < 5; ++k) {
            std::vector<Fp> pt{Fp::random(rng), Fp::random(rng), Fp::random(rng)};
            CHECK(d.evaluate(pt) == det(m.evaluate(pt)));
        }
    }
}

TEST_CASE("univariate gcd, interpolation and orders") {
    using U = UniPoly<Fp>;
    U a = U::linear_root(Fp(2)) * U::linear_root(Fp(2)) * U::linear_root(Fp(5));
    U b = U::linear_root(Fp(2)) * U::linear_root(Fp(7));
    CHECK(U::gcd(a, b) == U::linear_root(Fp(2)));
    CHECK(a.ord_at(Fp(2)) == 2);
    CHECK(a.ord_at(Fp(3)) == 0);
    CHECK(a.squarefree().degree() == 2);
    auto roots = roots_in_field(a);
    CHECK(roots.size() == 2u);
    std::vector<Fp> ts, vs;
    for (int i = 0; i < 4; ++i) {
        ts.push_back(Fp(i + 10));
        vs.push_back(a(Fp(i + 10)));
    }
    CHECK(interpolate<Fp>(ts, vs) == a);
    CHECK_THROWS(U().ord_at(Fp(1)));
}

TEST_CASE("zero-scheme length and distinct points") {
    auto z = zero_scheme<Fp>({px("x0"), px("x1")});
    CHECK(z.finite);
    CHECK(z.length == 1u);
    CHECK(z.distinct == 1u);
    z = zero_scheme<Fp>({px("x0^2"), px("x1")});
    CHECK(z.length == 2u);
    CHECK(z.distinct == 1u);
    z = zero_scheme<Fp>({px("x0*x1"), px("x2")});
    CHECK(z.length == 2u);
    CHECK(z.distinct == 2u);
    z = zero_scheme<Fp>({px("x0^2"), px("x1^2"), px("x2^2")});
    CHECK(z.length == 0u);
    z = zero_scheme<Fp>({px("x0^2 + x1^2 - x2^2"), px("x0 - 3*x1 + x2")});
    CHECK(z.length == 2u);
    // Four base points of a general pencil of conics.
    z = zero_scheme<Fp>({px("x0^2 - x1^2"), px("x1^2 - x2^2")});
    CHECK(z.length == 4u);
    CHECK(z.distinct == 4u);
    z = zero_scheme<Fp>({px("x0*x1")});
    CHECK_FALSE(z.finite);
}

TEST_CASE("exact division and polynomial systems") {
    auto f = px("x0^2*x2 - x1^2*x2");
    auto q = divide_exact(f, px("x2"));
    REQUIRE(q);
    CHECK(*q == px("x0^2 - x1^2"));
    CHECK_FALSE(divide_exact(f, px("x0")));
    // Koszul: sum x_i w_i = x0^3 + x1^3 + x2^3.
    auto w = solve_forms<Fp>({{px("x0"), px("x1"), px("x2")}}, {px("x0^3 + x1^3 + x2^3")}, {2, 2, 2});
    REQUIRE(w);
    CHECK(px("x0") * (*w)[0] + px("x1") * (*w)[1] + px("x2") * (*w)[2] == px("x0^3 + x1^3 + x2^3"));
}

TEST_CASE("fitting forms through sampled points") {
    std::mt19937_64 rng(19);
    auto c = parse_hompoly<Fp>("xi00*xi11 - xi01^2", Vars::XI);
    std::vector<std::vector<Fp>> pts;
    while (pts.size() < 60) {
        std::vector<Fp> p(6);
        for (auto& x : p) x = Fp::random(rng);
        // Solve for xi11 to land on the hypersurface.
        if (p[0].is_zero()) continue;
        p[3] = p[1] * p[1] / p[0];
        pts.push_back(p);
    }
    CHECK(fit_homogeneous(pts, 1).empty());
    auto fit = fit_homogeneous(pts, 2);
    REQUIRE(fit.size() == 1u);
    CHECK(proportional(fit[0], c));
    std::vector<Fp> a{Fp(1), Fp(0), Fp(0), Fp(0), Fp(0), Fp(0)}, b{Fp(0), Fp(0), Fp(0), Fp(1), Fp(0), Fp(0)};
    auto u = restrict_to_pencil(c, std::span<const Fp>(a), std::span<const Fp>(b));
    CHECK(u.degree() == 1);
}
