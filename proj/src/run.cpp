#include "jumploci/cli/run.hpp"

#include <sstream>

#include "jumploci/cli/report.hpp"
#include "jumploci/cli/spec_io.hpp"
#include "jumploci/cli/verify.hpp"
#include "jumploci/loci/loci.hpp"

namespace jumploci::cli {

namespace {

using algebra::ExactField;
using algebra::FieldTraits;
using algebra::Fp;
using sheafkit::BundleFamily;
using sheafkit::ConicForm;
using sheafkit::FamilyTag;

template <ExactField K>
constexpr bool finite = std::is_same_v<K, Fp>;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
}

template <ExactField K, std::size_t N>
std::array<K, N> parse_vec(const std::string& flag, const std::string& s) {
    auto parts = split_csv(s);
    if (parts.size() != N)
        throw ValidationError("--" + flag + ": expected " + std::to_string(N) + " comma-separated coefficients");
    std::array<K, N> v;
    bool nonzero = false;
    for (std::size_t i = 0; i < N; ++i) {
        try {
            v[i] = FieldTraits<K>::parse(parts[i]);
        } catch (const std::exception& e) {
            throw ValidationError("--" + flag + ": coefficient " + std::to_string(i) + ": " + e.what());
        }
        nonzero = nonzero || !v[i].is_zero();
    }
    if (!nonzero) throw ValidationError("--" + flag + ": all coefficients are zero");
    return v;
}

std::pair<int, int> parse_window(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
        std::size_t p1 = 0, p2 = 0;
        const int lo = std::stoi(s.substr(0, colon), &p1), hi = std::stoi(s.substr(colon + 1), &p2);
        if (p1 != colon || p2 != s.size() - colon - 1) throw std::invalid_argument("trailing characters");
        if (lo > hi) throw std::invalid_argument("LO > HI");
        return {lo, hi};
    } catch (const std::exception& e) {
        throw ValidationError("--window: expected LO:HI, got \"" + s + "\" (" + e.what() + ")");
    }
}

std::size_t samples_or(const RunConfig& cfg, std::size_t def) {
    if (!cfg.samples) return def;
    if (*cfg.samples < 0) throw ValidationError("--samples: must be >= 0");
    return static_cast<std::size_t>(*cfg.samples);
}

template <ExactField K>
void require_finite(const char* what) {
    if constexpr (!finite<K>) throw ValidationError(std::string(what) + " needs a finite field (--field Fp:P)");
}

template <ExactField K>
json base_report(const RunConfig& cfg, const BundleSpec& spec, const BundleFamily<K>& fam) {
    json r{{"schema", schema_version},
           {"command", cfg.command},
           {"family", spec.family},
           {"field", FieldTraits<K>::name()},
           {"seed", cfg.seed},
           {"chern", {{"c1", fam.chern_e.c1}, {"c2", fam.chern_e.c2}}},
           {"twist", fam.twist}};
    if (!spec.name.empty()) r["name"] = spec.name;
    if (cfg.samples) r["samples"] = *cfg.samples;
    return r;
}

template <ExactField K>
json cmd_splitting(const RunConfig& cfg, const BundleFamily<K>& fam) {
    if (cfg.line.has_value() == cfg.conic.has_value()) throw ValidationError("splitting: give exactly one of --line, --conic");
    loci::JumpOracle<K> o(fam);
    json r;
    std::optional<sheafkit::CurveParam<K>> g;
    if (cfg.line) {
        auto l = parse_vec<K, 3>("line", *cfg.line);
        r["curve"] = json{{"line", vec_json<K>(l)}};
        r["jump"] = jump_json(o.line(l));
        g = sheafkit::line_param(l);
    } else {
        ConicForm<K> C(parse_vec<K, 6>("conic", *cfg.conic));
        r["curve"] = json{{"conic", vec_json<K>(C.xi())}, {"smooth", C.is_smooth()}};
        if (C.is_smooth()) g = *sheafkit::parameterized(C).param();
        r["jump"] = jump_json(o.conic(C));
    }
    if (g) {
        auto pb = sheafkit::pullback(fam.bundle, *g);
        auto win = cfg.window ? parse_window(*cfg.window) : cohom::default_window_p1(pb);
        auto prof = cohom::h0_profile_p1(pb, win.first, win.second);
        r["splitting"] = splitting_json(cohom::splitting_type(prof));
        r["profile"] = profile_json(prof);
    }
    return r;
}

template <ExactField K>
json cmd_jlines(const RunConfig& cfg, const BundleFamily<K>& fam) {
    loci::JumpOracle<K> o(fam);
    json r;
    if (o.c1() == 0) {
        auto j1 = loci::j1_poly_c0(fam);
        r["locus"] = locus_json(j1, cfg.seed, 0, json{{"degree_equals_c2", j1.degree() == o.c2()}});
        if constexpr (finite<K>) {
            json lines = json::array();
            for (const auto& l : loci::points_on_curve(j1.poly, cfg.seed, samples_or(cfg, 10))) {
                auto info = o.line(l);
                if (!info.jumping) throw ComputationError("a point of J1 fails the splitting test");
                lines.push_back(json{{"line", vec_json<K>(l)}, {"jump", jump_json(info)}});
            }
            r["lines"] = lines;
        }
    } else {
        json lines = json::array();
        for (const auto& l : loci::jlines_cm1(fam, cfg.seed))
            lines.push_back(json{{"line", vec_json<K>(l)}, {"jump", jump_json(o.line(l))}});
        r["lines"] = lines;
        r["count"] = lines.size();
    }
    return r;
}

template <ExactField K>
json cmd_jconics(const RunConfig& cfg, const BundleFamily<K>& fam) {
    loci::JumpOracle<K> o(fam);
    json r;
    if (cfg.conic) {
        ConicForm<K> C(parse_vec<K, 6>("conic", *cfg.conic));
        r["conic"] = vec_json<K>(C.xi());
        r["smooth"] = C.is_smooth();
        auto info = o.conic(C);
        r["jump"] = jump_json(info);
        if constexpr (finite<K>) {
            if ((fam.tag == FamilyTag::TypeM12 || fam.tag == FamilyTag::Type03NonGeneral) && C.is_smooth()) {
                auto v = loci::ModificationTests(fam).test(C);
                r["kernel_test"] = json{{"jumping", v.jumping}, {"tangent", v.tangent}, {"agrees", v.jumping == info.jumping}};
            }
        }
        return r;
    }
    require_finite<K>("sampling jumping conics");
    if constexpr (finite<K>) {
        const std::size_t n = samples_or(cfg, 20);
        json conics = json::array();
        if (o.c1() == 0) {
            for (std::uint64_t i = 0; conics.size() < n && i < 200 * n + 200; ++i)
                for (const auto& s : loci::detail::pencil_hits(o, loci::task_seed(cfg.seed, "jconics/pencil", i))) {
                    if (conics.size() == n) break;
                    json c{{"conic", vec_json<Fp>(s.xi)}, {"smooth", s.smooth}, {"h1_sym2", s.corank}};
                    if (s.a) c["a"] = *s.a;
                    conics.push_back(c);
                }
        } else {
            auto j2 = loci::j2_det_cm1(fam);
            for (std::uint64_t i = 0; conics.size() < n && i < 200 * n + 200; ++i) {
                std::mt19937_64 rng(loci::task_seed(cfg.seed, "jconics/pencil", i));
                std::array<Fp, 6> a, b;
                for (auto& x : a) x = Fp::random(rng);
                for (auto& x : b) x = Fp::random(rng);
                auto rr = algebra::restrict_to_pencil(j2.poly, std::span<const Fp>(a), std::span<const Fp>(b));
                if (rr.is_zero()) continue;
                for (const auto& t : algebra::roots_in_field(rr)) {
                    if (conics.size() == n) break;
                    std::array<Fp, 6> x;
                    for (int k = 0; k < 6; ++k) x[k] = a[k] + t * b[k];
                    ConicForm<Fp> C(x);
                    auto info = o.conic(C);
                    if (!info.jumping) throw ComputationError("a point of J2 fails the jump test");
                    json c{{"conic", vec_json<Fp>(x)}, {"smooth", C.is_smooth()}, {"method", info.method}};
                    if (info.a) c["a"] = *info.a;
                    conics.push_back(c);
                }
            }
        }
        if (conics.size() < n) throw ComputationError("sampling exhausted before finding enough jumping conics");
        r["conics"] = conics;
    }
    return r;
}

template <ExactField K>
json cmd_locus(const RunConfig& cfg, const BundleFamily<K>& fam) {
    loci::JumpOracle<K> o(fam);
    const std::string kind = cfg.kind.value_or("J2");
    const int c2 = o.c2();
    if (kind == "J1") {
        if (o.c1() != 0) throw ValidationError("locus J1 is a curve only for c1 = 0; use the jlines command");
        auto j1 = loci::j1_poly_c0(fam);
        return locus_json(j1, cfg.seed, 0, json{{"degree_equals_c2", j1.degree() == c2}});
    }
    if (kind == "J2" && o.c1() == -1) {
        auto j2 = loci::j2_det_cm1(fam);
        json checks{{"degree_equals_c2_minus_1", j2.degree() == c2 - 1}};
        if (fam.tag == FamilyTag::TypeM12)
            checks["closed_form_match"] = algebra::proportional(loci::m12_hyperplane(fam).poly, j2.poly);
        return locus_json(j2, cfg.seed, 0, checks);
    }
    if (kind == "J2") {
        require_finite<K>("fitting J2 for c1 = 0");
        if constexpr (finite<K>) {
            auto fit = loci::fit_j2_c0(fam, cfg.seed, samples_or(cfg, 0));
            const int hits = loci::closure_check(fit.locus, loci::find_jumping_line(fam, cfg.seed), cfg.seed);
            json checks{{"degree_equals_c2", fit.locus.degree() == c2},
                        {"fit_dimension_one", fit.fit_dimension == 1},
                        {"closure", hits == 20}};
            auto j = locus_json(fit.locus, cfg.seed, fit.samples.size(), checks);
            j["max_jump"] = fit.max_jump;
            return j;
        }
    }
    if (kind == "R") {
        if (fam.tag != FamilyTag::Type03General) throw ValidationError("locus R needs a type03g family");
        auto R = loci::Type03Geometry<K>(fam).ram_cubic();
        return locus_json(R, cfg.seed, 0, json{{"degree_equals_3", R.degree() == 3}});
    }
    if (kind == "second_kind") {
        if (o.c1() != -1) throw ValidationError("locus second_kind needs c1 = -1");
        auto sk = loci::second_kind_curve(loci::j2_det_cm1(fam));
        return locus_json(sk, cfg.seed, 0, json{{"degree_equals_2_c2_minus_2", sk.degree() == 2 * (c2 - 1)}});
    }
    throw ValidationError("--kind: expected J1, J2, R or second_kind, got \"" + kind + "\"");
}

template <ExactField K>
json cmd_sample(const RunConfig& cfg, const BundleFamily<K>& fam) {
    const std::size_t n = samples_or(cfg, 500);
    auto c = conic_histogram(fam, cfg.seed, n), l = line_histogram(fam, cfg.seed, n);
    return json{{"conics", c.to_json()}, {"lines", l.to_json()}};
}

template <ExactField K>
json dispatch(const RunConfig& cfg, const BundleSpec& spec) {
    auto fam = build_family<K>(spec);
    json r = base_report(cfg, spec, fam);
    json body;
    if (cfg.command == "splitting") body = cmd_splitting(cfg, fam);
    else if (cfg.command == "jlines") body = cmd_jlines(cfg, fam);
    else if (cfg.command == "jconics") body = cmd_jconics(cfg, fam);
    else if (cfg.command == "locus") body = cmd_locus(cfg, fam);
    else if (cfg.command == "sample") body = cmd_sample(cfg, fam);
    else if (cfg.command == "verify") {
        require_finite<K>("verify");
        if constexpr (finite<K>) body = verify_suite(fam, cfg.seed, samples_or(cfg, 500));
    } else {
        throw ValidationError("unknown command \"" + cfg.command + "\"");
    }
    r.update(body);
    return r;
}

} // namespace

RunResult run(const RunConfig& cfg) {
    RunResult res;
    try {
        auto spec = cfg.spec_text.empty() ? read_spec_file(cfg.spec_path) : parse_spec_text(cfg.spec_text);
        if (cfg.field) spec.field = FieldSpec::parse(*cfg.field);
        json report;
        if (spec.field.rational) {
            report = dispatch<algebra::Rational>(cfg, spec);
        } else {
            algebra::ModulusGuard guard(spec.field.p);
            report = dispatch<Fp>(cfg, spec);
        }
        res.report = render(report, cfg.pretty);
    } catch (const ValidationError& e) {
        res.exit_code = ValidationFailure;
        res.error = e.what();
    } catch (const std::exception& e) {
        res.exit_code = ComputationFailure;
        res.error = e.what();
    }
    return res;
}

} // namespace jumploci::cli
