#pragma once

#include <span>
#include <string>

#include "jumploci/cli/spec_io.hpp"
#include "jumploci/cohom/splitting.hpp"
#include "jumploci/loci/locus.hpp"

namespace jumploci::cli {

inline constexpr const char* schema_version = "1";

template <algebra::ExactField K>
std::string coeff_string(const K& c) {
    if constexpr (std::is_same_v<K, algebra::Fp>) {
        return std::to_string(c.value());
    } else {
        return c.to_string();
    }
}

// {"e0,e1,...": coefficient}, lead coefficient 1 in the fixed monomial order.
template <algebra::ExactField K>
json poly_json(const algebra::HomPoly<K>& p) {
    json j = json::object();
    if (p.is_zero()) return j;
    auto n = p.normalized();
    for (const auto& [e, c] : n.terms()) j[algebra::exps_key(e, n.nv())] = coeff_string(c);
    return j;
}

template <algebra::ExactField K>
json vec_json(std::span<const K> v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(coeff_string(x));
    return a;
}

inline json splitting_json(const cohom::SplittingType& s) { return json{{"parts", s.parts}}; }

inline json profile_json(const cohom::CohomProfile& p) {
    json h0 = json::object(), h1 = json::object();
    for (const auto& [k, v] : p.h0) h0[std::to_string(k)] = v;
    for (const auto& [k, v] : p.h1) h1[std::to_string(k)] = v;
    return json{{"window", {p.lo, p.hi}}, {"h0", h0}, {"h1", h1}};
}

inline json jump_json(const loci::JumpInfo& info) {
    json j{{"jumping", info.jumping}, {"method", info.method}};
    if (info.a) j["a"] = *info.a;
    if (info.splitting) j["splitting"] = splitting_json(*info.splitting);
    return j;
}

template <algebra::ExactField K>
json locus_json(const loci::LocusPolynomial<K>& L, std::uint64_t seed, std::size_t samples_used, const json& checks) {
    return json{{"kind", loci::locus_kind_name(L.kind)},
                {"degree", L.degree()},
                {"variables", algebra::vars_tag(L.vars())},
                {"poly", poly_json(L.poly)},
                {"text", L.poly.to_string()},
                {"provenance", loci::provenance_name(L.provenance)},
                {"seed", seed},
                {"samples_used", samples_used},
                {"checks", checks}};
}

// Compact JSON, or an indented plain-text rendering.
std::string render(const json& j, bool pretty);

} // namespace jumploci::cli
