#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "jumploci/algebra/field.hpp"
#include "jumploci/algebra/monomial.hpp"

namespace jumploci::algebra {

// Homogeneous polynomial, dense over the degree-d monomial basis of its variable tuple.
// Invariant: coeffs_.size() == count_monomials(nvars, degree).
template <ExactField K>
class HomPoly {
public:
    HomPoly() : HomPoly(Vars::X, 0) {}
    HomPoly(Vars v, int degree) : vars_(v), degree_(degree) {
        if (degree < 0) throw std::invalid_argument("negative polynomial degree");
        coeffs_.assign(count_monomials(nvars(v), degree), K());
    }
    static HomPoly constant(Vars v, K c) {
        HomPoly p(v, 0);
        p.coeffs_[0] = c;
        return p;
    }
    static HomPoly monomial(Vars v, const Exps& e, K c = K(1)) {
        HomPoly p(v, exps_degree(e));
        p.coeffs_[monomial_index(e, nvars(v))] = c;
        return p;
    }
    static HomPoly variable(Vars v, int i) {
        Exps e{};
        e[i] = 1;
        return monomial(v, e);
    }
    // Linear form sum c_i * var_i.
    static HomPoly linear(Vars v, std::span<const K> c) {
        HomPoly p(v, 1);
        for (int i = 0; i < nvars(v); ++i) p.coeffs_[i] = c[i];
        return p;
    }

    Vars vars() const { return vars_; }
    int nv() const { return nvars(vars_); }
    int degree() const { return degree_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<K>& coeffs() const { return coeffs_; }
    const K& coeff(std::size_t i) const { return coeffs_[i]; }
    K& coeff(std::size_t i) { return coeffs_[i]; }
    K coeff(const Exps& e) const {
        if (exps_degree(e) != degree_) return K();
        return coeffs_[monomial_index(e, nv())];
    }
    void set_coeff(const Exps& e, K c) {
        if (exps_degree(e) != degree_) throw std::invalid_argument("monomial degree mismatch");
        coeffs_[monomial_index(e, nv())] = c;
    }
    const Exps& exps(std::size_t i) const { return monomial_basis(nv(), degree_)[i]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& c : coeffs_) n += !c.is_zero();
        return n;
    }
    // Nonzero terms in descending order.
    std::vector<std::pair<Exps, K>> terms() const {
        std::vector<std::pair<Exps, K>> out;
        const auto& basis = monomial_basis(nv(), degree_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) out.emplace_back(basis[i], coeffs_[i]);
        return out;
    }
    // Index of the leading (largest) nonzero monomial, or size() for zero.
    std::size_t lead_index() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return i;
        return coeffs_.size();
    }
    HomPoly normalized() const {
        std::size_t i = lead_index();
        if (i == coeffs_.size()) return *this;
        return *this * coeffs_[i].inv();
    }

    HomPoly& operator+=(const HomPoly& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    HomPoly& operator-=(const HomPoly& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    HomPoly& operator*=(const K& c) {
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    HomPoly operator-() const {
        HomPoly r = *this;
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }
    friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
    friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
    friend HomPoly operator*(HomPoly a, const K& c) { return a *= c; }
    friend HomPoly operator*(const K& c, HomPoly a) { return a *= c; }
    friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
        if (a.vars_ != b.vars_) throw std::invalid_argument("polynomial variable sets differ");
        HomPoly r(a.vars_, a.degree_ + b.degree_);
        const int n = a.nv();
        const auto& ba = monomial_basis(n, a.degree_);
        const auto& bb = monomial_basis(n, b.degree_);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                r.coeffs_[monomial_index(exps_add(ba[i], bb[j]), n)] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }
    friend bool operator==(const HomPoly& a, const HomPoly& b) {
        if (a.vars_ != b.vars_) return false;
        if (a.degree_ != b.degree_) return a.is_zero() && b.is_zero();
        return a.coeffs_ == b.coeffs_;
    }

    HomPoly pow(int e) const {
        HomPoly r = constant(vars_, K(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    K evaluate(std::span<const K> pt) const {
        const int n = nv();
        if (static_cast<int>(pt.size()) < n) throw std::invalid_argument("evaluation point too short");
        // Power tables avoid repeated exponentiation.
        std::vector<std::vector<K>> pw(n, std::vector<K>(degree_ + 1));
        for (int v = 0; v < n; ++v) {
            pw[v][0] = K(1);
            for (int e = 1; e <= degree_; ++e) pw[v][e] = pw[v][e - 1] * pt[v];
        }
        const auto& basis = monomial_basis(n, degree_);
        K acc;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            K t = coeffs_[i];
            for (int v = 0; v < n; ++v) t *= pw[v][basis[i][v]];
            acc += t;
        }
        return acc;
    }
    K operator()(std::span<const K> pt) const { return evaluate(pt); }

    // Substitute var_i -> images[i]; all images share one variable set and degree.
    HomPoly substitute(const std::vector<HomPoly>& images) const {
        const int n = nv();
        if (static_cast<int>(images.size()) != n) throw std::invalid_argument("substitution arity mismatch");
        const Vars tv = images[0].vars_;
        const int e = images[0].degree_;
        for (const auto& im : images)
            if (im.vars_ != tv || im.degree_ != e) throw std::invalid_argument("substitution images not uniform");
        std::vector<std::vector<HomPoly>> pw(n);
        for (int v = 0; v < n; ++v) {
            pw[v].push_back(constant(tv, K(1)));
            for (int k = 1; k <= degree_; ++k) pw[v].push_back(pw[v].back() * images[v]);
        }
        HomPoly r(tv, degree_ * e);
        const auto& basis = monomial_basis(n, degree_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            HomPoly t = constant(tv, coeffs_[i]);
            for (int v = 0; v < n; ++v)
                if (basis[i][v]) t = t * pw[v][basis[i][v]];
            r += t;
        }
        return r;
    }

    HomPoly derivative(int var) const {
        if (degree_ == 0) return HomPoly(vars_, 0);
        HomPoly r(vars_, degree_ - 1);
        const int n = nv();
        const auto& basis = monomial_basis(n, degree_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero() || basis[i][var] == 0) continue;
            Exps e = basis[i];
            K m(static_cast<std::int64_t>(e[var]));
            e[var] -= 1;
            r.coeffs_[monomial_index(e, n)] += coeffs_[i] * m;
        }
        return r;
    }

    // Same coefficients reinterpreted over another variable tuple of equal arity.
    HomPoly relabel(Vars v) const {
        if (nvars(v) != nv()) throw std::invalid_argument("relabel arity mismatch");
        HomPoly r = *this;
        r.vars_ = v;
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        const int n = nv();
        for (const auto& [e, c] : terms()) {
            std::string cs = c.to_string();
            bool neg = false;
            if constexpr (std::is_same_v<K, Fp>) {
                auto v = c.symmetric();
                neg = v < 0;
                cs = std::to_string(neg ? -v : v);
            } else {
                if (!cs.empty() && cs[0] == '-') {
                    neg = true;
                    cs = cs.substr(1);
                }
                if (cs.size() > 2 && cs.compare(cs.size() - 2, 2, "/1") == 0) cs.resize(cs.size() - 2);
            }
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            std::string mono;
            for (int v = 0; v < n; ++v) {
                if (!e[v]) continue;
                if (!mono.empty()) mono += "*";
                mono += var_name(vars_, v);
                if (e[v] > 1) mono += "^" + std::to_string(e[v]);
            }
            if (mono.empty()) s += cs;
            else if (cs == "1") s += mono;
            else s += cs + "*" + mono;
        }
        return s;
    }

private:
    void check_compatible(const HomPoly& o) const {
        if (vars_ != o.vars_) throw std::invalid_argument("polynomial variable sets differ");
        if (degree_ != o.degree_)
            throw std::invalid_argument("adding polynomials of unequal degree " + std::to_string(degree_) + " and " +
                                        std::to_string(o.degree_));
    }

    Vars vars_;
    int degree_;
    std::vector<K> coeffs_;
};

// Two polynomials agree up to a nonzero scalar (both zero counts as agreement).
template <ExactField K>
bool proportional(const HomPoly<K>& a, const HomPoly<K>& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.vars() != b.vars() || a.degree() != b.degree()) return false;
    return a.normalized() == b.normalized();
}

} // namespace jumploci::algebra
