#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace jumploci::algebra {

// Arbitrary-precision rational, always canonical (coprime, positive denominator).
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t v) : q_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) : q_(static_cast<long>(n), static_cast<unsigned long>(1)) {
        if (d == 0) throw std::domain_error("zero denominator");
        q_ /= mpq_class(static_cast<long>(d));
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    // Accepts "n" or "n/d" in decimal.
    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        if (q.get_den() == 0) throw std::domain_error("zero denominator");
        return Rational(q);
    }

    const mpq_class& raw() const { return q_; }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero in Q");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero in Q");
        return Rational(mpq_class(1) / q_);
    }
    Rational pow(std::uint64_t e) const {
        Rational r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Always "num/den".
    std::string to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

    // Small integers keep sampled computations cheap; genericity is probabilistic anyway.
    template <class Rng>
    static Rational random(Rng& rng) {
        std::uniform_int_distribution<int> d(-1000, 1000);
        return Rational(d(rng));
    }
    template <class Rng>
    static Rational random_nonzero(Rng& rng) {
        for (;;) {
            Rational r = random(rng);
            if (!r.is_zero()) return r;
        }
    }

private:
    mpq_class q_;
};

} // namespace jumploci::algebra
