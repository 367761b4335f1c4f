#pragma once

#include <concepts>
#include <stdexcept>
#include <string>

#include "jumploci/algebra/fp.hpp"
#include "jumploci/algebra/rational.hpp"

namespace jumploci::algebra {

template <class K>
concept ExactField = requires(K a, K b) {
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { a / b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a.inv() } -> std::same_as<K>;
    { a.is_zero() } -> std::same_as<bool>;
    { a.to_string() } -> std::same_as<std::string>;
    { a == b } -> std::same_as<bool>;
};

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Fp> {
    static constexpr bool is_finite = true;
    static std::string name() { return "Fp:" + std::to_string(Fp::modulus()); }
    // Decimal integer or "n/d", reduced digit by digit so any length is accepted.
    static Fp parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash != std::string::npos) return parse(s.substr(0, slash)) / parse(s.substr(slash + 1));
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
        Fp r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
            r = r * Fp(10) + Fp(s[i] - '0');
        }
        return neg ? -r : r;
    }
};

template <>
struct FieldTraits<Rational> {
    static constexpr bool is_finite = false;
    static std::string name() { return "Q"; }
    static Rational parse(const std::string& s) { return Rational::parse(s); }
};

static_assert(ExactField<Fp>);
static_assert(ExactField<Rational>);

} // namespace jumploci::algebra
