#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "jumploci/algebra/hompoly.hpp"

namespace jumploci::algebra {

class PolyParseError : public std::invalid_argument {
public:
    PolyParseError(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Recursive-descent parser for sums of products over named variables.
// Grammar: expr = ['-'|'+'] term {('+'|'-') term}; term = factor {'*' factor};
// factor = atom ['^' integer]; atom = integer ['/' integer] | variable | '(' expr ')'.
template <ExactField K>
class PolyParser {
public:
    using Sparse = std::map<Exps, K>;

    PolyParser(const std::string& s, Vars v) : s_(s), v_(v) {}

    Sparse parse() {
        Sparse r = expr();
        skip();
        if (i_ != s_.size()) throw PolyParseError("unexpected character '" + std::string(1, s_[i_]) + "'", i_);
        return r;
    }

private:
    static void add_into(Sparse& a, const Sparse& b, bool negate) {
        for (const auto& [e, c] : b) {
            K& slot = a[e];
            slot += negate ? -c : c;
            if (slot.is_zero()) a.erase(e);
        }
    }
    static Sparse mul(const Sparse& a, const Sparse& b) {
        Sparse r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                K& slot = r[exps_add(ea, eb)];
                slot += ca * cb;
            }
        for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
        return r;
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    Sparse expr() {
        bool neg = false;
        skip();
        if (eat('-')) neg = true;
        else eat('+');
        Sparse r;
        add_into(r, term(), neg);
        for (;;) {
            if (eat('+')) add_into(r, term(), false);
            else if (eat('-')) add_into(r, term(), true);
            else break;
        }
        return r;
    }
    Sparse term() {
        Sparse r = factor();
        while (eat('*')) r = mul(r, factor());
        return r;
    }
    Sparse factor() {
        Sparse a = atom();
        if (eat('^')) {
            skip();
            std::size_t start = i_;
            std::string digits = read_digits();
            if (digits.empty()) throw PolyParseError("exponent expected", start);
            if (digits.size() > 3 || std::stoi(digits) > 64) throw PolyParseError("exponent too large", start);
            int e = std::stoi(digits);
            Sparse r;
            r[Exps{}] = K(1);
            for (int k = 0; k < e; ++k) r = mul(r, a);
            return r;
        }
        return a;
    }
    std::string read_digits() {
        std::string d;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += s_[i_++];
        return d;
    }
    Sparse atom() {
        skip();
        if (i_ >= s_.size()) throw PolyParseError("unexpected end of polynomial", i_);
        if (eat('(')) {
            Sparse r = expr();
            if (!eat(')')) throw PolyParseError("missing ')'", i_);
            return r;
        }
        if (eat('-')) {
            Sparse r = atom();
            Sparse neg;
            add_into(neg, r, true);
            return neg;
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            std::string num = read_digits();
            if (i_ < s_.size() && s_[i_] == '/') {
                ++i_;
                std::size_t start = i_;
                std::string den = read_digits();
                if (den.empty()) throw PolyParseError("denominator expected", start);
                num += "/" + den;
            }
            K c = FieldTraits<K>::parse(num);
            Sparse r;
            if (!c.is_zero()) r[Exps{}] = c;
            return r;
        }
        const int n = nvars(v_);
        // Longest matching variable name wins (xi01 before x0-like prefixes).
        int best = -1;
        std::size_t best_len = 0;
        for (int k = 0; k < n; ++k) {
            std::string name = var_name(v_, k);
            if (s_.compare(i_, name.size(), name) == 0 && name.size() > best_len) {
                best = k;
                best_len = name.size();
            }
        }
        if (best < 0) throw PolyParseError("unknown symbol", i_);
        std::size_t end = i_ + best_len;
        if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end])))
            throw PolyParseError("unknown symbol", i_);
        i_ = end;
        Exps e{};
        e[best] = 1;
        Sparse r;
        r[e] = K(1);
        return r;
    }

    const std::string& s_;
    Vars v_;
    std::size_t i_ = 0;
};

// Parse a homogeneous polynomial. The zero polynomial takes expected_degree (or 0).
template <ExactField K>
HomPoly<K> parse_hompoly(const std::string& s, Vars v = Vars::X, std::optional<int> expected_degree = std::nullopt) {
    auto sparse = PolyParser<K>(s, v).parse();
    if (sparse.empty()) return HomPoly<K>(v, expected_degree.value_or(0));
    int d = exps_degree(sparse.begin()->first);
    for (const auto& [e, c] : sparse)
        if (exps_degree(e) != d) throw std::invalid_argument("polynomial is not homogeneous: " + s);
    if (expected_degree && *expected_degree != d)
        throw std::invalid_argument("polynomial '" + s + "' has degree " + std::to_string(d) + ", expected " +
                                    std::to_string(*expected_degree));
    HomPoly<K> p(v, d);
    for (const auto& [e, c] : sparse) p.set_coeff(e, c);
    return p;
}

} // namespace jumploci::algebra
