#include "jumploci/cli/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace jumploci::cli {

FieldSpec FieldSpec::parse(const std::string& s) {
    FieldSpec f;
    if (s == "Q") {
        f.rational = true;
        return f;
    }
    if (s == "Fp") return f;
    if (s.rfind("Fp:", 0) != 0) throw ValidationError("field: expected Fp:P or Q, got \"" + s + "\"");
    const std::string digits = s.substr(3);
    if (digits.empty() || digits.size() > 10 || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("field: bad modulus \"" + digits + "\"");
    const auto p = std::stoull(digits);
    if (p < 3 || p >= (1ull << 31) || !algebra::Fp::is_prime(static_cast<algebra::Fp::rep>(p)))
        throw ValidationError("field: modulus must be an odd prime below 2^31, got " + digits);
    f.p = static_cast<std::uint32_t>(p);
    return f;
}

json FieldSpec::to_json() const {
    if (rational) return json{{"type", "Q"}};
    return json{{"type", "Fp"}, {"p", p}};
}

namespace {

FieldSpec field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ValidationError("field: expected {\"type\":\"Fp\",\"p\":P} or {\"type\":\"Q\"}");
    const auto t = j.at("type").get<std::string>();
    if (t == "Q") {
        if (j.size() != 1) throw ValidationError("field: Q takes no further keys");
        return FieldSpec::parse("Q");
    }
    if (t != "Fp") throw ValidationError("field.type: expected \"Fp\" or \"Q\", got \"" + t + "\"");
    for (const auto& [k, v] : j.items())
        if (k != "type" && k != "p") throw ValidationError("field." + k + ": unknown key");
    if (!j.contains("p")) return FieldSpec::parse("Fp");
    if (!j.at("p").is_number_unsigned()) throw ValidationError("field.p: expected a positive integer");
    return FieldSpec::parse("Fp:" + std::to_string(j.at("p").get<std::uint64_t>()));
}

const std::set<std::string>& families() {
    static const std::set<std::string> f{"type02", "type03g", "type03ng", "m12", "generic"};
    return f;
}

const std::set<std::string>& data_keys(const std::string& family) {
    static const std::set<std::string> t02{"f"}, t03g{"q"}, mod{"line", "psi"}, gen{"rows", "cols", "matrix"};
    if (family == "type02") return t02;
    if (family == "type03g") return t03g;
    if (family == "generic") return gen;
    return mod;
}

// Structural check of data; polynomial syntax is checked by parsing every entry over F_p.
void check_data(const BundleSpec& s) {
    if (!s.data.is_object()) throw ValidationError("data: expected an object");
    const auto& keys = data_keys(s.family);
    for (const auto& [k, v] : s.data.items())
        if (!keys.count(k)) throw ValidationError("data." + k + ": unknown key for family " + s.family);
    for (const auto& k : keys)
        if (!s.data.contains(k)) throw ValidationError("data." + k + ": missing");
    algebra::ModulusGuard guard(s.field.rational ? algebra::Fp::default_modulus : s.field.p);
    auto walk = [&](auto&& self, const json& j, const std::string& path) -> void {
        if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) self(self, j[i], path + "[" + std::to_string(i) + "]");
        } else if (j.is_string()) {
            detail::poly_at<algebra::Fp>(j, path);
        } else {
            throw ValidationError(path + ": expected a polynomial string");
        }
    };
    for (const auto& k : keys)
        if (k != "rows" && k != "cols") walk(walk, s.data.at(k), "data." + k);
}

} // namespace

BundleSpec parse_spec(const json& j) {
    if (!j.is_object()) throw ValidationError("spec: expected a JSON object");
    for (const auto& [k, v] : j.items())
        if (k != "field" && k != "family" && k != "data" && k != "name") throw ValidationError(k + ": unknown key");
    BundleSpec s;
    s.field = j.contains("field") ? field_from_json(j.at("field")) : FieldSpec{};
    if (!j.contains("family") || !j.at("family").is_string()) throw ValidationError("family: expected a string");
    s.family = j.at("family").get<std::string>();
    if (!families().count(s.family))
        throw ValidationError("family: expected one of type02, type03g, type03ng, m12, generic; got \"" + s.family + "\"");
    if (!j.contains("data")) throw ValidationError("data: missing");
    s.data = j.at("data");
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ValidationError("name: expected a string");
        s.name = j.at("name").get<std::string>();
    }
    check_data(s);
    return s;
}

BundleSpec parse_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("spec is not valid JSON: ") + e.what());
    }
    return parse_spec(j);
}

BundleSpec read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

json spec_to_json(const BundleSpec& s) {
    json j{{"field", s.field.to_json()}, {"family", s.family}, {"data", s.data}};
    if (!s.name.empty()) j["name"] = s.name;
    return j;
}

} // namespace jumploci::cli
