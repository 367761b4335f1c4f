#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "jumploci/algebra/field.hpp"
#include "jumploci/algebra/polyparse.hpp"
#include "jumploci/sheafkit/families.hpp"

namespace jumploci::cli {

using json = nlohmann::json;

// Bad input: exit code 2.
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Failed computation: exit code 3.
class ComputationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldSpec {
    bool rational = false;
    std::uint32_t p = algebra::Fp::default_modulus;

    // "Fp:P", "Fp" or "Q".
    static FieldSpec parse(const std::string& s);
    std::string name() const { return rational ? "Q" : "Fp:" + std::to_string(p); }
    json to_json() const;
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct BundleSpec {
    FieldSpec field;
    std::string family;  // type02 | type03g | type03ng | m12 | generic
    json data;
    std::string name;
};

// Validates shape and polynomial syntax; diagnostics name the offending field.
BundleSpec parse_spec(const json& j);
BundleSpec parse_spec_text(const std::string& text);
BundleSpec read_spec_file(const std::string& path);
json spec_to_json(const BundleSpec& s);

namespace detail {

template <algebra::ExactField K>
algebra::HomPoly<K> poly_at(const json& j, const std::string& path, std::optional<int> degree = std::nullopt) {
    if (!j.is_string()) throw ValidationError(path + ": expected a polynomial string");
    try {
        return algebra::parse_hompoly<K>(j.get<std::string>(), algebra::Vars::X, degree);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

template <algebra::ExactField K>
std::vector<algebra::HomPoly<K>> poly_list(const json& data, const char* key, std::size_t n, int degree) {
    const std::string path = std::string("data.") + key;
    if (!data.contains(key)) throw ValidationError(path + ": missing");
    const auto& a = data.at(key);
    if (!a.is_array() || a.size() != n)
        throw ValidationError(path + ": expected an array of " + std::to_string(n) + " polynomial strings");
    std::vector<algebra::HomPoly<K>> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(poly_at<K>(a[i], path + "[" + std::to_string(i) + "]", degree));
    return out;
}

inline std::vector<int> int_list(const json& data, const char* key) {
    const std::string path = std::string("data.") + key;
    if (!data.contains(key) || !data.at(key).is_array()) throw ValidationError(path + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& v : data.at(key)) {
        if (!v.is_number_integer()) throw ValidationError(path + ": expected an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// Entries of a rows x cols matrix; entry (i, j) must have degree rows[i] - cols[j] or be zero.
template <algebra::ExactField K>
algebra::PolyMatrix<K> poly_matrix(const json& m, const std::string& path, const std::vector<int>& rt,
                                   const std::vector<int>& ct) {
    if (!m.is_array() || m.size() != rt.size())
        throw ValidationError(path + ": expected " + std::to_string(rt.size()) + " rows");
    algebra::PolyMatrix<K> out(algebra::Vars::X, rt, ct);
    for (std::size_t i = 0; i < rt.size(); ++i) {
        if (!m[i].is_array() || m[i].size() != ct.size())
            throw ValidationError(path + "[" + std::to_string(i) + "]: expected " + std::to_string(ct.size()) + " entries");
        for (std::size_t j = 0; j < ct.size(); ++j) {
            const std::string at = path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            auto p = poly_at<K>(m[i][j], at);
            if (p.is_zero()) continue;
            try {
                out.set(i, j, p);
            } catch (const std::invalid_argument& e) {
                throw ValidationError(at + ": " + e.what());
            }
        }
    }
    return out;
}

} // namespace detail

// The family described by a validated spec, over K (the caller installs the modulus).
template <algebra::ExactField K>
sheafkit::BundleFamily<K> build_family(const BundleSpec& s) {
    const auto& d = s.data;
    try {
        if (s.family == "type02") {
            return sheafkit::make_type02(detail::poly_matrix<K>(d.at("f"), "data.f", {0, 0, 0, 0}, {-1, -1}));
        }
        if (s.family == "type03g") return sheafkit::make_type03_general(detail::poly_list<K>(d, "q", 3, 2));
        if (s.family == "type03ng")
            return sheafkit::make_type03_nongeneral(detail::poly_at<K>(d.at("line"), "data.line", 1),
                                                    detail::poly_list<K>(d, "psi", 3, 3));
        if (s.family == "m12")
            return sheafkit::make_m12(detail::poly_at<K>(d.at("line"), "data.line", 1), detail::poly_list<K>(d, "psi", 2, 2));
        if (s.family == "generic") {
            auto rt = detail::int_list(d, "rows"), ct = detail::int_list(d, "cols");
            auto phi = detail::poly_matrix<K>(d.at("matrix"), "data.matrix", rt, ct);
            return sheafkit::make_generic(sheafkit::Presentation<K>::coker(sheafkit::Ambient::P2, phi));
        }
    } catch (const sheafkit::FamilyError& e) {
        throw ValidationError(std::string("family: ") + e.what());
    } catch (const sheafkit::PresentationError& e) {
        throw ValidationError(std::string("presentation: ") + e.what());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("data: ") + e.what());
    }
    throw ValidationError("family: unknown family \"" + s.family + "\"");
}

// Spec data written back from a constructed family; parse(serialize(parse(x))) == parse(x).
template <algebra::ExactField K>
json family_data(const sheafkit::BundleFamily<K>& fam) {
    auto strs = [](const std::vector<algebra::HomPoly<K>>& ps) {
        json a = json::array();
        for (const auto& p : ps) a.push_back(p.to_string());
        return a;
    };
    auto matrix = [](const algebra::PolyMatrix<K>& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json r = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string());
            rows.push_back(r);
        }
        return rows;
    };
    json d = json::object();
    switch (fam.tag) {
    case sheafkit::FamilyTag::Type02: d["f"] = matrix(*fam.f); break;
    case sheafkit::FamilyTag::Type03General: d["q"] = strs(fam.q); break;
    case sheafkit::FamilyTag::Type03NonGeneral:
    case sheafkit::FamilyTag::TypeM12:
        d["line"] = fam.line->to_string();
        d["psi"] = strs(fam.psi);
        break;
    case sheafkit::FamilyTag::Generic: {
        const auto& m = fam.presented.maps()[0];
        d["rows"] = m.row_twist();
        d["cols"] = m.col_twist();
        d["matrix"] = matrix(m);
        break;
    }
    }
    return d;
}

} // namespace jumploci::cli
