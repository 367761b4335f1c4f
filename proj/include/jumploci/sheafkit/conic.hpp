#pragma once

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "jumploci/algebra/hompoly.hpp"
#include "jumploci/algebra/matrix.hpp"
#include "jumploci/sheafkit/presentation.hpp"

namespace jumploci::sheafkit {

// Binary forms g = (g0, g1, g2) in s, t of common degree 1 (line) or 2 (conic).
template <ExactField K>
using CurveParam = std::array<HomPoly<K>, 3>;

// Coefficient matrix of a parameterization: rows are the g_i, columns the st-monomials.
template <ExactField K>
Matrix<K> param_matrix(const CurveParam<K>& g) {
    const int d = g[0].degree();
    Matrix<K> m(3, static_cast<std::size_t>(d + 1));
    for (int i = 0; i < 3; ++i) {
        if (g[i].vars() != Vars::ST || (g[i].degree() != d && !g[i].is_zero()))
            throw std::invalid_argument("parameterization must be binary forms of one degree");
        for (int j = 0; j <= d; ++j) m(i, j) = g[i].is_zero() ? K() : g[i].coeff(j);
    }
    return m;
}

// A parameterization is valid when its image is a line (degree 1, rank 2) or a
// smooth conic (degree 2, rank 3); otherwise it factors through a point or a line.
template <ExactField K>
bool param_is_valid(const CurveParam<K>& g) {
    const int d = g[0].degree();
    if (d != 1 && d != 2) return false;
    return algebra::rank(param_matrix(g)) == static_cast<std::size_t>(d + 1);
}

// Symmetric form xi = sum_{i<=j} xi_ij x_i x_j with monomial coefficients in the
// order (xi00, xi01, xi02, xi11, xi12, xi22).
template <ExactField K>
class ConicForm {
public:
    ConicForm() = default;
    explicit ConicForm(std::array<K, 6> xi) : xi_(xi) {
        bool nz = false;
        for (const auto& c : xi_) nz = nz || !c.is_zero();
        if (!nz) throw std::invalid_argument("conic form must be nonzero");
    }
    static ConicForm from_poly(const HomPoly<K>& p) {
        if (p.vars() != Vars::X || p.degree() != 2) throw std::invalid_argument("conic must be a quadric in x");
        std::array<K, 6> xi;
        for (int i = 0; i < 6; ++i) xi[i] = p.coeff(i);
        return ConicForm(xi);
    }
    // The double line l^2.
    static ConicForm double_line(const std::array<K, 3>& l) {
        return from_poly(HomPoly<K>::linear(Vars::X, l).pow(2));
    }
    static ConicForm line_pair(const std::array<K, 3>& l1, const std::array<K, 3>& l2) {
        return from_poly(HomPoly<K>::linear(Vars::X, l1) * HomPoly<K>::linear(Vars::X, l2));
    }

    const std::array<K, 6>& xi() const { return xi_; }
    std::vector<K> point() const { return {xi_.begin(), xi_.end()}; }
    HomPoly<K> poly() const {
        HomPoly<K> p(Vars::X, 2);
        for (int i = 0; i < 6; ++i) p.coeff(i) = xi_[i];
        return p;
    }
    // Gram matrix M with xi(x) = x^T M x; needs characteristic != 2.
    Matrix<K> gram() const {
        K half = K(2).inv();
        Matrix<K> m(3, 3);
        m(0, 0) = xi_[0];
        m(1, 1) = xi_[3];
        m(2, 2) = xi_[5];
        m(0, 1) = m(1, 0) = xi_[1] * half;
        m(0, 2) = m(2, 0) = xi_[2] * half;
        m(1, 2) = m(2, 1) = xi_[4] * half;
        return m;
    }
    std::size_t gram_rank() const { return algebra::rank(gram()); }
    bool is_smooth() const { return gram_rank() == 3; }
    K evaluate(std::span<const K> x) const { return poly().evaluate(x); }
    // Polar form B(P, Q) = P^T M Q.
    K bilinear(std::span<const K> p, std::span<const K> q) const {
        auto m = gram();
        K acc;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += p[i] * m(i, j) * q[j];
        return acc;
    }

    const std::optional<CurveParam<K>>& param() const { return param_; }
    ConicForm with_param(const CurveParam<K>& g) const {
        if (!param_is_valid(g) || g[0].degree() != 2) throw std::invalid_argument("degenerate conic parameterization");
        HomPoly<K> comp = poly().substitute({g[0], g[1], g[2]});
        if (!comp.is_zero()) throw std::invalid_argument("parameterization does not lie on the conic");
        ConicForm c = *this;
        c.param_ = g;
        return c;
    }

private:
    std::array<K, 6> xi_{};
    std::optional<CurveParam<K>> param_;
};

// Line l0 x0 + l1 x1 + l2 x2 = 0 parameterized by two kernel vectors.
template <ExactField K>
CurveParam<K> line_param(const std::array<K, 3>& l) {
    Matrix<K> m(1, 3);
    for (int i = 0; i < 3; ++i) m(0, i) = l[i];
    auto ker = algebra::kernel_basis(m);
    if (ker.size() != 2) throw std::invalid_argument("line coordinates must be nonzero");
    CurveParam<K> g;
    for (int i = 0; i < 3; ++i) {
        std::array<K, 2> c{ker[0][i], ker[1][i]};
        g[i] = HomPoly<K>::linear(Vars::ST, c);
    }
    return g;
}

template <ExactField K>
CurveParam<K> line_through(std::span<const K> p, std::span<const K> q) {
    CurveParam<K> g;
    for (int i = 0; i < 3; ++i) {
        std::array<K, 2> c{p[i], q[i]};
        g[i] = HomPoly<K>::linear(Vars::ST, c);
    }
    if (!param_is_valid(g)) throw std::invalid_argument("points must be distinct");
    return g;
}

template <ExactField K>
std::array<K, 3> cross(std::span<const K> a, std::span<const K> b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Rational point on a conic: scan x = (1, a, z), then the line at infinity.
// Over F_p this always succeeds for smooth conics; over Q the scan is bounded.
template <ExactField K>
std::optional<std::array<K, 3>> rational_point(const ConicForm<K>& c, int bound = 0) {
    const auto& x = c.xi();
    auto root_of = [](K A, K B, K C) -> std::optional<K> {
        // A z^2 + B z + C = 0
        if (A.is_zero()) {
            if (B.is_zero()) return C.is_zero() ? std::optional<K>(K()) : std::nullopt;
            return -C / B;
        }
        K disc = B * B - K(4) * A * C;
        if constexpr (std::is_same_v<K, algebra::Fp>) {
            if (!disc.is_square()) return std::nullopt;
            return (-B + disc.sqrt()) / (K(2) * A);
        } else {
            const mpq_class& q = disc.raw();
            if (sgn(q) < 0) return std::nullopt;
            if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
            mpz_class n, d;
            mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
            return (-B + K(algebra::Rational(mpq_class(n, d)))) / (K(2) * A);
        }
    };
    // Points (0,0,1) and (0,1,z).
    if (x[5].is_zero()) return std::array<K, 3>{K(), K(), K(1)};
    if (auto z = root_of(x[5], x[4], x[3])) return std::array<K, 3>{K(), K(1), *z};
    std::int64_t limit;
    if constexpr (std::is_same_v<K, algebra::Fp>) limit = algebra::Fp::modulus();
    else limit = bound > 0 ? bound : 200;
    for (std::int64_t i = 0; i < limit; ++i) {
        for (int sgn_ = 0; sgn_ < (std::is_same_v<K, algebra::Fp> ? 1 : 2); ++sgn_) {
            K a(sgn_ ? -i : i);
            K A = x[5], B = x[2] + x[4] * a, C = x[0] + x[1] * a + x[3] * a * a;
            if (auto z = root_of(A, B, C)) return std::array<K, 3>{K(1), a, *z};
        }
    }
    return std::nullopt;
}

// Quadratic parameterization of a smooth conic through a rational point P:
// x(D) = -xi(D) P + 2 B(P, D) D with D = s Q1 + t Q2 and P, Q1, Q2 a basis.
template <ExactField K>
CurveParam<K> conic_param_from_point(const ConicForm<K>& c, const std::array<K, 3>& P) {
    std::array<std::array<K, 3>, 3> e{};
    for (int i = 0; i < 3; ++i) e[i][i] = K(1);
    // Complete P to a basis with two unit vectors.
    int skip = 0;
    for (int i = 0; i < 3; ++i)
        if (!P[i].is_zero()) {
            skip = i;
            break;
        }
    std::vector<std::array<K, 3>> Q;
    for (int i = 0; i < 3; ++i)
        if (i != skip) Q.push_back(e[i]);
    auto Ds = HomPoly<K>::variable(Vars::ST, 0), Dt = HomPoly<K>::variable(Vars::ST, 1);
    std::array<HomPoly<K>, 3> D;
    for (int i = 0; i < 3; ++i) D[i] = Ds * Q[0][i] + Dt * Q[1][i];
    HomPoly<K> xiD = c.poly().substitute({D[0], D[1], D[2]});
    auto m = c.gram();
    HomPoly<K> B(Vars::ST, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!P[i].is_zero() && !m(i, j).is_zero()) B += D[j] * (P[i] * m(i, j));
    CurveParam<K> g;
    for (int i = 0; i < 3; ++i) g[i] = (-xiD) * P[i] + (B * D[i]) * K(2);
    return g;
}

template <ExactField K>
ConicForm<K> parameterized(const ConicForm<K>& c) {
    if (c.param()) return c;
    if (!c.is_smooth()) throw std::invalid_argument("only smooth conics admit a quadratic parameterization");
    auto P = rational_point(c);
    if (!P) throw std::domain_error("no rational point found on the conic");
    return c.with_param(conic_param_from_point(c, *P));
}

// Image of g = A (s^2, st, t^2); its equation is y0 y2 - y1^2 with y = A^{-1} x.
template <ExactField K>
ConicForm<K> conic_from_matrix(const Matrix<K>& A) {
    Matrix<K> Ai = algebra::inverse(A);
    std::array<HomPoly<K>, 3> y;
    for (int i = 0; i < 3; ++i) {
        std::array<K, 3> row{Ai(i, 0), Ai(i, 1), Ai(i, 2)};
        y[i] = HomPoly<K>::linear(Vars::X, row);
    }
    ConicForm<K> c = ConicForm<K>::from_poly(y[0] * y[2] - y[1] * y[1]);
    CurveParam<K> g;
    const auto& v = algebra::monomial_basis(2, 2);
    for (int i = 0; i < 3; ++i) {
        g[i] = HomPoly<K>(Vars::ST, 2);
        for (int j = 0; j < 3; ++j) g[i].set_coeff(v[j], A(i, j));
    }
    return c.with_param(g);
}

template <ExactField K, class Rng>
Matrix<K> random_invertible(Rng& rng, std::size_t n = 3) {
    for (;;) {
        auto A = Matrix<K>::random(n, n, rng);
        if (algebra::rank(A) == n) return A;
    }
}

template <ExactField K, class Rng>
ConicForm<K> random_smooth_conic(Rng& rng) {
    return conic_from_matrix(random_invertible<K>(rng));
}

template <ExactField K, class Rng>
std::array<K, 3> random_nonzero_vec3(Rng& rng) {
    for (;;) {
        std::array<K, 3> v{K::random(rng), K::random(rng), K::random(rng)};
        if (!v[0].is_zero() || !v[1].is_zero() || !v[2].is_zero()) return v;
    }
}

template <ExactField K>
Presentation<K> pullback(const Presentation<K>& p, const CurveParam<K>& g) {
    if (p.ambient() != Ambient::P2) throw std::invalid_argument("pullback needs a presentation on P2");
    if (!param_is_valid(g)) throw std::invalid_argument("degenerate parameterization");
    return p.substituted(Ambient::P1, {g[0], g[1], g[2]});
}

} // namespace jumploci::sheafkit
