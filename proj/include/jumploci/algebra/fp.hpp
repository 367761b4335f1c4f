#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace jumploci::algebra {

// Element of F_p for the process-wide modulus p. Values are kept reduced in [0, p).
// The modulus is read on every operation; change it only through ModulusGuard while
// no computation is running.
class Fp {
public:
    using rep = std::uint32_t;

    static constexpr rep default_modulus = 32003;

    Fp() = default;
    Fp(std::int64_t v) { // NOLINT(google-explicit-constructor)
        std::int64_t m = static_cast<std::int64_t>(p_);
        v %= m;
        if (v < 0) v += m;
        v_ = static_cast<rep>(v);
    }

    static rep modulus() { return p_; }
    static bool is_prime(rep n) {
        if (n < 2) return false;
        for (rep d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
    // p must be an odd prime below 2^31 so products fit in 64 bits.
    static void set_modulus(rep p) {
        if (p < 3 || p >= (1u << 31) || !is_prime(p))
            throw std::invalid_argument("modulus must be an odd prime below 2^31: " + std::to_string(p));
        p_ = p;
    }

    rep value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    // Representative in (-p/2, p/2].
    std::int64_t symmetric() const {
        return v_ > p_ / 2 ? static_cast<std::int64_t>(v_) - p_ : static_cast<std::int64_t>(v_);
    }

    Fp operator-() const { return from_rep(v_ == 0 ? 0 : p_ - v_); }
    Fp& operator+=(Fp o) {
        rep s = v_ + o.v_;
        v_ = s >= p_ ? s - p_ : s;
        return *this;
    }
    Fp& operator-=(Fp o) {
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    Fp& operator*=(Fp o) {
        v_ = static_cast<rep>(static_cast<std::uint64_t>(v_) * o.v_ % p_);
        return *this;
    }
    Fp& operator/=(Fp o) { return *this *= o.inv(); }

    friend Fp operator+(Fp a, Fp b) { return a += b; }
    friend Fp operator-(Fp a, Fp b) { return a -= b; }
    friend Fp operator*(Fp a, Fp b) { return a *= b; }
    friend Fp operator/(Fp a, Fp b) { return a /= b; }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

    Fp pow(std::uint64_t e) const {
        Fp r = from_rep(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    Fp inv() const {
        if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
        std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
        while (m) {
            std::int64_t q = a / m, t = a - q * m;
            a = m;
            m = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        return Fp(x0);
    }
    bool is_square() const { return v_ == 0 || pow((p_ - 1) / 2).is_one(); }
    // Tonelli-Shanks; requires is_square().
    Fp sqrt() const;

    std::string to_string() const { return std::to_string(v_); }

    template <class Rng>
    static Fp random(Rng& rng) {
        std::uniform_int_distribution<rep> d(0, p_ - 1);
        return from_rep(d(rng));
    }
    template <class Rng>
    static Fp random_nonzero(Rng& rng) {
        std::uniform_int_distribution<rep> d(1, p_ - 1);
        return from_rep(d(rng));
    }

    static Fp from_rep(rep r) {
        Fp f;
        f.v_ = r;
        return f;
    }

private:
    rep v_ = 0;
    static inline rep p_ = default_modulus;
};

inline Fp Fp::sqrt() const {
    if (v_ == 0) return Fp();
    if (!is_square()) throw std::domain_error("not a square in F_p");
    rep p = p_;
    if (p % 4 == 3) return pow((static_cast<std::uint64_t>(p) + 1) / 4);
    rep q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    Fp z = from_rep(2);
    while (z.is_square()) z += from_rep(1);
    Fp c = z.pow(q), r = pow((q + 1) / 2), t = pow(q);
    int m = s;
    while (!t.is_one()) {
        int i = 0;
        Fp tt = t;
        while (!tt.is_one()) {
            tt *= tt;
            ++i;
        }
        Fp b = c;
        for (int j = 0; j < m - i - 1; ++j) b *= b;
        r *= b;
        c = b * b;
        t *= c;
        m = i;
    }
    return r;
}

// Scoped modulus change; restores the previous modulus on exit.
class ModulusGuard {
public:
    explicit ModulusGuard(Fp::rep p) : saved_(Fp::modulus()) { Fp::set_modulus(p); }
    ~ModulusGuard() { Fp::set_modulus(saved_); }
    ModulusGuard(const ModulusGuard&) = delete;
    ModulusGuard& operator=(const ModulusGuard&) = delete;

private:
    Fp::rep saved_;
};

} // namespace jumploci::algebra
