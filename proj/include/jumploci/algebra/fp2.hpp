#pragma once

#include <stdexcept>

#include "jumploci/algebra/fp.hpp"

namespace jumploci::algebra {

// Element a + b*w of F_p[w]/(w^2 - n) for a fixed non-residue n.
class Fp2 {
public:
    Fp2() = default;
    Fp2(Fp a) : a_(a) {} // NOLINT(google-explicit-constructor)
    Fp2(Fp a, Fp b) : a_(a), b_(b) {}

    // Smallest non-residue, cached per modulus.
    static Fp nonresidue() {
        thread_local Fp::rep cached_for = 0;
        thread_local Fp n;
        if (cached_for != Fp::modulus()) {
            n = Fp(2);
            while (n.is_square()) n += Fp(1);
            cached_for = Fp::modulus();
        }
        return n;
    }
    // Some square root of x in F_p2 (x in F_p).
    static Fp2 sqrt_of(Fp x) {
        if (x.is_square()) return Fp2(x.sqrt());
        Fp n = nonresidue();
        return Fp2(Fp(), (x / n).sqrt());
    }

    Fp re() const { return a_; }
    Fp im() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    friend Fp2 operator+(Fp2 x, Fp2 y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend Fp2 operator-(Fp2 x, Fp2 y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend Fp2 operator*(Fp2 x, Fp2 y) {
        Fp n = nonresidue();
        return {x.a_ * y.a_ + n * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    Fp2 operator-() const { return {-a_, -b_}; }
    Fp2 inv() const {
        Fp n = nonresidue();
        Fp norm = a_ * a_ - n * b_ * b_;
        if (norm.is_zero()) throw std::domain_error("inverse of zero in F_p2");
        Fp ni = norm.inv();
        return {a_ * ni, -b_ * ni};
    }
    friend Fp2 operator/(Fp2 x, Fp2 y) { return x * y.inv(); }
    friend bool operator==(Fp2 x, Fp2 y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    Fp a_, b_;
};

} // namespace jumploci::algebra
