#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jumploci/algebra/field.hpp"

namespace jumploci::algebra {

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
template <ExactField K>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(K c) { return UniPoly(std::vector<K>{c}); }
    static UniPoly x() { return UniPoly(std::vector<K>{K(), K(1)}); }
    // (t - r)
    static UniPoly linear_root(K r) { return UniPoly(std::vector<K>{-r, K(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : K(); }
    K lead() const { return c_.empty() ? K() : c_.back(); }

    K operator()(const K& t) const {
        K acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<K> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<K> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const K& s, const UniPoly& a) {
        std::vector<K> c = a.c_;
        for (auto& x : c) x *= s;
        return UniPoly(std::move(c));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // Euclidean division: a = q b + r, deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<K> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {UniPoly(), a};
        std::vector<K> q(a.c_.size() - b.c_.size() + 1);
        K inv = b.lead().inv();
        for (int i = a.degree(); i >= db; --i) {
            K f = r[i] * inv;
            q[i - db] = f;
            if (f.is_zero()) continue;
            for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
        }
        r.resize(db);
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }
    UniPoly monic() const { return is_zero() ? *this : lead().inv() * *this; }
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<std::int64_t>(i));
        return UniPoly(std::move(d));
    }

    // Multiplicity of t0 as a root (0 if not a root). The zero polynomial has no order.
    int ord_at(const K& t0) const {
        if (is_zero()) throw std::domain_error("pencil contained in locus: restriction is identically zero");
        int m = 0;
        UniPoly p = *this;
        const UniPoly lin = linear_root(t0);
        for (;;) {
            if (!p(t0).is_zero()) return m;
            p = divmod(p, lin).first;
            ++m;
        }
    }

    // Squarefree part, valid when the characteristic exceeds the degree.
    UniPoly squarefree() const {
        if (degree() <= 0) return monic();
        return divmod(*this, gcd(*this, derivative())).first.monic();
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].to_string();
            if (i) s += "*t^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

// Unique polynomial of degree < n through n points with distinct abscissae (Newton form).
template <ExactField K>
UniPoly<K> interpolate(std::span<const K> ts, std::span<const K> vs) {
    const std::size_t n = ts.size();
    if (vs.size() != n) throw std::invalid_argument("interpolation size mismatch");
    std::vector<K> dd(vs.begin(), vs.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            K den = ts[i] - ts[i - j];
            if (den.is_zero()) throw std::invalid_argument("repeated interpolation node");
            dd[i] = (dd[i] - dd[i - 1]) / den;
            if (i == j) break;
        }
    UniPoly<K> p;
    for (std::size_t i = n; i-- > 0;) p = p * UniPoly<K>::linear_root(ts[i]) + UniPoly<K>::constant(dd[i]);
    return p;
}

// All roots in F_p by exhaustive scan of the squarefree part.
inline std::vector<Fp> roots_in_field(const UniPoly<Fp>& p) {
    std::vector<Fp> out;
    if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
    if (p.degree() <= 0) return out;
    UniPoly<Fp> q = p.squarefree();
    if (q.degree() == 1) {
        out.push_back(-q.coeff(0) / q.coeff(1));
        return out;
    }
    const auto pmod = Fp::modulus();
    for (Fp::rep t = 0; t < pmod && static_cast<int>(out.size()) < q.degree(); ++t) {
        Fp x = Fp::from_rep(t);
        if (q(x).is_zero()) out.push_back(x);
    }
    return out;
}

} // namespace jumploci::algebra
