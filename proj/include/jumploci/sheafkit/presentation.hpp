#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumploci/algebra/matrix.hpp"
#include "jumploci/algebra/polymatrix.hpp"

namespace jumploci::sheafkit {

using algebra::ExactField;
using algebra::HomPoly;
using algebra::Matrix;
using algebra::PolyMatrix;
using algebra::Vars;

enum class Ambient : std::uint8_t { P2, P1 };
// Coker: F1 -> F0, sheaf = coker.
// Resolution: G2 -> G1 -> G0, exact on the left, sheaf = coker of the last map.
// Monad: A -> B -> C, left injective, right surjective, sheaf = middle cohomology.
enum class Kind : std::uint8_t { Coker, Resolution, Monad };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Coker: return "coker";
    case Kind::Resolution: return "resolution";
    case Kind::Monad: return "monad";
    }
    return "?";
}

inline Vars ambient_vars(Ambient a) { return a == Ambient::P2 ? Vars::X : Vars::ST; }
inline int ambient_dim(Ambient a) { return a == Ambient::P2 ? 2 : 1; }

class PresentationError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bounded complex of sums of line bundles whose only cohomology sheaf sits at
// complex degree 0. terms[i] sits at complex degree first_degree() + i;
// maps[i] : terms[i] -> terms[i+1] has row twists terms[i+1] and column twists terms[i].
template <ExactField K>
class Presentation {
public:
    Presentation() = default;
    Presentation(Kind kind, Ambient amb, std::vector<std::vector<int>> terms, std::vector<PolyMatrix<K>> maps)
        : kind_(kind), amb_(amb), terms_(std::move(terms)), maps_(std::move(maps)) {
        check_shape();
    }

    static Presentation coker(Ambient amb, const PolyMatrix<K>& phi) {
        return Presentation(Kind::Coker, amb, {phi.col_twist(), phi.row_twist()}, {phi});
    }
    // Direct sum of line bundles, written as a coker with empty source.
    static Presentation split(Ambient amb, std::vector<int> twists) {
        PolyMatrix<K> phi(ambient_vars(amb), twists, {});
        return coker(amb, phi);
    }

    Kind kind() const { return kind_; }
    Ambient ambient() const { return amb_; }
    Vars vars() const { return ambient_vars(amb_); }
    const std::vector<std::vector<int>>& terms() const { return terms_; }
    const std::vector<PolyMatrix<K>>& maps() const { return maps_; }
    int first_degree() const { return kind_ == Kind::Monad ? -1 : -static_cast<int>(terms_.size()) + 1; }
    int last_degree() const { return first_degree() + static_cast<int>(terms_.size()) - 1; }
    const std::vector<int>& term_at(int p) const { return terms_.at(p - first_degree()); }
    const PolyMatrix<K>& map_from(int p) const { return maps_.at(p - first_degree()); }

    int rank() const {
        int r = 0;
        for (int p = first_degree(); p <= last_degree(); ++p)
            r += ((p % 2 == 0) ? 1 : -1) * static_cast<int>(term_at(p).size());
        return r;
    }

    Presentation twisted(int k) const {
        Presentation out = *this;
        for (auto& t : out.terms_)
            for (auto& a : t) a += k;
        for (std::size_t i = 0; i < maps_.size(); ++i) {
            PolyMatrix<K> m(vars(), out.terms_[i + 1], out.terms_[i]);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (!maps_[i].entry_zero(r, c)) m.set(r, c, maps_[i](r, c));
            out.maps_[i] = std::move(m);
        }
        return out;
    }

    // Apply x -> images to every entry; images are forms of common degree e in the
    // target variables, twists scale by e.
    Presentation substituted(Ambient target, const std::vector<HomPoly<K>>& images) const {
        const int e = images.at(0).degree();
        std::vector<std::vector<int>> nt = terms_;
        for (auto& t : nt)
            for (auto& a : t) a *= e;
        std::vector<PolyMatrix<K>> nm;
        for (const auto& m : maps_) nm.push_back(m.substitute(images));
        return Presentation(kind_, target, std::move(nt), std::move(nm));
    }

    // Pointwise checks at one point: returns an empty string when the point passes.
    std::string pointwise_failure(std::span<const K> pt) const {
        std::vector<Matrix<K>> ev;
        for (const auto& m : maps_) ev.push_back(m.evaluate(pt));
        switch (kind_) {
        case Kind::Coker:
            if (algebra::rank(ev[0]) < ev[0].cols()) return "map drops rank (not injective on fibers)";
            break;
        case Kind::Resolution: {
            if (!(ev[1] * ev[0]).is_zero()) return "composite of maps is not zero";
            auto r0 = algebra::rank(ev[0]);
            auto r1 = algebra::rank(ev[1]);
            if (r0 < ev[0].cols()) return "left map not injective on fibers";
            if (r0 + r1 != ev[0].rows()) return "complex not exact on fibers";
            break;
        }
        case Kind::Monad: {
            if (!(ev[1] * ev[0]).is_zero()) return "composite of maps is not zero";
            if (algebra::rank(ev[0]) < ev[0].cols()) return "left map not injective on fibers";
            if (algebra::rank(ev[1]) < ev[1].rows()) return "right map not surjective on fibers";
            break;
        }
        }
        return {};
    }

    // Composite maps must vanish identically (checked symbolically).
    void check_composites() const {
        for (std::size_t i = 0; i + 1 < maps_.size(); ++i) {
            const auto& a = maps_[i];
            const auto& b = maps_[i + 1];
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < a.cols(); ++c) {
                    int d = b.row_twist()[r] - a.col_twist()[c];
                    if (d < 0) continue;
                    HomPoly<K> acc(vars(), d);
                    for (std::size_t k = 0; k < a.rows(); ++k)
                        if (!b.entry_zero(r, k) && !a.entry_zero(k, c)) acc += b(r, k) * a(k, c);
                    if (!acc.is_zero()) throw PresentationError("composite of presentation maps is not zero");
                }
        }
    }

    // Probabilistic validation: every coordinate point plus `samples` random points.
    template <class Rng>
    void validate(Rng& rng, int samples = 64) const {
        check_composites();
        const int n = algebra::nvars(vars());
        for (int i = 0; i < n; ++i) {
            std::vector<K> pt(n);
            pt[i] = K(1);
            auto f = pointwise_failure(pt);
            if (!f.empty()) throw PresentationError("not a bundle presentation: " + f + " at a coordinate point");
        }
        for (int s = 0; s < samples; ++s) {
            std::vector<K> pt(n);
            bool nz = false;
            for (auto& x : pt) {
                x = K::random(rng);
                nz = nz || !x.is_zero();
            }
            if (!nz) continue;
            auto f = pointwise_failure(pt);
            if (!f.empty()) throw PresentationError("not a bundle presentation: " + f + " at a sampled point");
        }
    }

private:
    void check_shape() const {
        std::size_t want_terms = kind_ == Kind::Coker ? 2 : 3;
        if (terms_.size() != want_terms || maps_.size() + 1 != terms_.size())
            throw PresentationError(std::string("wrong number of terms for a ") + kind_name(kind_) + " presentation");
        for (std::size_t i = 0; i < maps_.size(); ++i) {
            if (maps_[i].vars() != vars()) throw PresentationError("map variables do not match the ambient space");
            if (maps_[i].col_twist() != terms_[i] || maps_[i].row_twist() != terms_[i + 1])
                throw PresentationError("map degree template does not match the term twists");
        }
        if (terms_.back().empty() && kind_ != Kind::Monad) throw PresentationError("target term must be non-empty");
    }

    Kind kind_ = Kind::Coker;
    Ambient amb_ = Ambient::P2;
    std::vector<std::vector<int>> terms_;
    std::vector<PolyMatrix<K>> maps_;
};

// Total Chern class truncated mod h^3 on P^2 (entries c0 = 1, c1, c2).
struct ChernClass {
    std::int64_t c1 = 0, c2 = 0;
    friend bool operator==(const ChernClass&, const ChernClass&) = default;
};

inline ChernClass chern_mul(ChernClass a, ChernClass b) { return {a.c1 + b.c1, a.c2 + a.c1 * b.c1 + b.c2}; }
inline ChernClass chern_inv(ChernClass a) { return {-a.c1, a.c1 * a.c1 - a.c2}; }
inline ChernClass chern_of_sum(const std::vector<int>& twists) {
    ChernClass c;
    for (int a : twists) c = chern_mul(c, {a, 0});
    return c;
}
// Chern classes of a rank-r sheaf twisted by k.
inline ChernClass chern_twist(ChernClass c, int rank, int k) {
    return {c.c1 + static_cast<std::int64_t>(rank) * k,
            c.c2 + static_cast<std::int64_t>(rank - 1) * c.c1 * k + static_cast<std::int64_t>(rank) * (rank - 1) / 2 * k * k};
}

// Multiplicativity over the complex: even terms contribute c, odd terms c^{-1}.
template <ExactField K>
ChernClass chern(const Presentation<K>& p) {
    ChernClass c;
    for (int d = p.first_degree(); d <= p.last_degree(); ++d) {
        ChernClass t = chern_of_sum(p.term_at(d));
        c = chern_mul(c, (d % 2 == 0) ? t : chern_inv(t));
    }
    if (p.ambient() == Ambient::P1) c.c2 = 0;
    return c;
}

inline std::int64_t chi_line_bundle(Ambient amb, std::int64_t d) {
    return amb == Ambient::P2 ? (d + 1) * (d + 2) / 2 : d + 1;
}

// Euler characteristic, additive over the summands of the complex.
template <ExactField K>
std::int64_t euler_char(const Presentation<K>& p, int k) {
    std::int64_t chi = 0;
    for (int d = p.first_degree(); d <= p.last_degree(); ++d) {
        std::int64_t s = 0;
        for (int a : p.term_at(d)) s += chi_line_bundle(p.ambient(), a + k);
        chi += (d % 2 == 0) ? s : -s;
    }
    return chi;
}

// Riemann-Roch on P^2: r + 3c1/2 + (c1^2 - 2c2)/2 at twist k, in closed form.
inline std::int64_t riemann_roch_p2(int rank, ChernClass c, int k) {
    ChernClass t = chern_twist(c, rank, k);
    std::int64_t twice = 2LL * rank + 3 * t.c1 + t.c1 * t.c1 - 2 * t.c2;
    return twice / 2;
}

// Rank-2 closed forms: (k+2)(k+1) - c2 for c1 = 0; (k+2)(k+1) - (k+1) - c2 for c1 = -1.
inline std::int64_t riemann_roch_rank2(ChernClass c, int k) {
    std::int64_t base = static_cast<std::int64_t>(k + 2) * (k + 1) - c.c2;
    if (c.c1 == 0) return base;
    if (c.c1 == -1) return base - (k + 1);
    throw std::invalid_argument("closed form needs c1 in {0,-1}");
}

// Riemann-Roch on P^1: rank + degree + rank*k.
inline std::int64_t riemann_roch_p1(int rank, std::int64_t degree, int k) { return rank + degree + static_cast<std::int64_t>(rank) * k; }

} // namespace jumploci::sheafkit
