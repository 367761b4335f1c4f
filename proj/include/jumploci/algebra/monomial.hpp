#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jumploci::algebra {

// Named variable tuples. Order inside each tuple is the variable order of the
// monomial ordering (first variable largest).
enum class Vars : std::uint8_t { X, ST, XI, L };

constexpr int nvars(Vars v) {
    switch (v) {
    case Vars::X: return 3;
    case Vars::ST: return 2;
    case Vars::XI: return 6;
    case Vars::L: return 3;
    }
    return 0;
}

inline std::string var_name(Vars v, int i) {
    static const char* xi[] = {"xi00", "xi01", "xi02", "xi11", "xi12", "xi22"};
    switch (v) {
    case Vars::X: return "x" + std::to_string(i);
    case Vars::ST: return i == 0 ? "s" : "t";
    case Vars::XI: return xi[i];
    case Vars::L: return "l" + std::to_string(i);
    }
    return "?";
}

inline const char* vars_tag(Vars v) {
    switch (v) {
    case Vars::X: return "x";
    case Vars::ST: return "st";
    case Vars::XI: return "xi";
    case Vars::L: return "l";
    }
    return "?";
}

using Exps = std::array<std::uint8_t, 6>;

inline int exps_degree(const Exps& e) {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

// Number of monomials of degree d in n variables; 0 for d < 0.
inline std::size_t count_monomials(int n, int d) {
    if (d < 0 || n <= 0) return (d == 0 && n == 0) ? 1 : 0;
    std::uint64_t r = 1;
    for (int i = 1; i < n; ++i) r = r * static_cast<std::uint64_t>(d + i) / static_cast<std::uint64_t>(i);
    return static_cast<std::size_t>(r);
}

// Position of e among degree-d monomials in n variables, descending lex order
// (index 0 is x_0^d). Uses sum over leading variables of the count of larger
// monomials sharing the prefix.
inline std::size_t monomial_index(const Exps& e, int n) {
    int rem = exps_degree(e);
    std::size_t idx = 0;
    for (int i = 0; i + 1 < n; ++i) {
        idx += count_monomials(n - i, rem - e[i] - 1);
        rem -= e[i];
    }
    return idx;
}

namespace detail {
inline void enumerate(int n, int d, int i, Exps& cur, std::vector<Exps>& out) {
    if (i == n - 1) {
        cur[i] = static_cast<std::uint8_t>(d);
        out.push_back(cur);
        cur[i] = 0;
        return;
    }
    for (int a = d; a >= 0; --a) {
        cur[i] = static_cast<std::uint8_t>(a);
        enumerate(n, d - a, i + 1, cur, out);
    }
    cur[i] = 0;
}
} // namespace detail

// Degree-d monomials in n variables in descending lex order; cached, reference stays valid.
inline const std::vector<Exps>& monomial_basis(int n, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Exps>> cache;
    if (d < 0) {
        static const std::vector<Exps> empty;
        return empty;
    }
    if (d > 255) throw std::out_of_range("monomial degree too large");
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.try_emplace({n, d});
    if (inserted) {
        Exps cur{};
        if (n == 0) {
            if (d == 0) it->second.push_back(cur);
        } else {
            detail::enumerate(n, d, 0, cur, it->second);
        }
    }
    return it->second;
}

inline Exps exps_add(const Exps& a, const Exps& b) {
    Exps r{};
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint8_t>(a[i] + b[i]);
    return r;
}

// Exponent string "e0,e1,..." with n entries.
inline std::string exps_key(const Exps& e, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s;
}

inline Exps parse_exps_key(const std::string& s, int n) {
    Exps e{};
    int i = 0;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (i >= n || tok.empty()) throw std::invalid_argument("bad exponent key: " + s);
        int v = std::stoi(tok);
        if (v < 0 || v > 255) throw std::invalid_argument("bad exponent key: " + s);
        e[i++] = static_cast<std::uint8_t>(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (i != n) throw std::invalid_argument("bad exponent key: " + s);
    return e;
}

} // namespace jumploci::algebra
