#include "jumploci/cli/verify.hpp"

#include <algorithm>

#include "jumploci/loci/loci.hpp"

namespace jumploci::cli {

namespace {

using algebra::Fp;
using algebra::HomPoly;
using sheafkit::BundleFamily;
using sheafkit::ConicForm;
using sheafkit::FamilyTag;

using Vec3 = std::array<Fp, 3>;
using Vec6 = std::array<Fp, 6>;

class Suite {
public:
    void add(const std::string& name, const char* anchor, bool pass, json detail = json::object(),
             json counterexample = nullptr) {
        json c{{"anchor", anchor}, {"pass", pass}, {"detail", std::move(detail)}};
        if (!pass && !counterexample.is_null()) c["counterexample"] = std::move(counterexample);
        checks_[name] = std::move(c);
    }
    // Runs body; an exception becomes a failed check carrying its message.
    template <class F>
    void guarded(const std::string& name, const char* anchor, F body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, anchor, false, json{{"error", e.what()}});
        }
    }
    const json& checks() const { return checks_; }
    bool all_pass() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const json& c) { return c.at("pass").get<bool>(); });
    }

private:
    json checks_ = json::object();
};

json v3(const Vec3& v) { return vec_json<Fp>(v); }
json v6(const Vec6& v) { return vec_json<Fp>(v); }

Vec6 random6(std::mt19937_64& rng) {
    Vec6 x;
    for (auto& v : x) v = Fp::random(rng);
    return x;
}

void common_checks(Suite& s, const BundleFamily<Fp>& fam, std::uint64_t seed, std::size_t samples) {
    const auto& E = fam.bundle;
    const int c1 = static_cast<int>(fam.chern_e.c1);
    s.guarded("euler_characteristic", "Riemann-Roch for rank-2 bundles on P2", [&] {
        json bad = nullptr;
        for (int k = -6; k <= 6 && bad.is_null(); ++k) {
            auto h = cohom::hypercohomology(E, k);
            const auto chi = h.h0 - h.h1 + h.h2;
            const auto rr = sheafkit::riemann_roch_p2(2, fam.chern_e, k);
            const auto sum = sheafkit::euler_char(E, k);
            if (chi != rr || sum != rr) bad = json{{"k", k}, {"cohomology", chi}, {"closed_form", rr}, {"additive", sum}};
        }
        s.add("euler_characteristic", "Riemann-Roch for rank-2 bundles on P2", bad.is_null(),
              json{{"window", {-6, 6}}}, bad);
    });
    s.guarded("conic_euler_characteristic", "chi(C; E_C(k)) = 4k + 2 + 2 c1 on a smooth conic", [&] {
        std::mt19937_64 rng(loci::task_seed(seed, "verify/conic_chi", 0));
        auto C = sheafkit::random_smooth_conic<Fp>(rng);
        auto prof = cohom::h0_profile_p1(sheafkit::pullback(E, *C.param()), -12, 12);
        json bad = nullptr;
        for (int k = -6; k <= 6 && bad.is_null(); ++k) {
            const auto chi = prof.h0.at(2 * k) - prof.h1.at(2 * k);
            if (chi != 4 * k + 2 + 2 * c1) bad = json{{"k", k}, {"chi", chi}, {"conic", v6(C.xi())}};
        }
        s.add("conic_euler_characteristic", "chi(C; E_C(k)) = 4k + 2 + 2 c1 on a smooth conic", bad.is_null(),
              json{{"window", {-6, 6}}, {"expected", c1 == -1 ? "4k" : "4k+2"}}, bad);
    });
    s.guarded("grauert_mulich_conics", "generic splitting on conics is balanced with gap at most 1", [&] {
        auto h = conic_histogram(fam, seed, samples);
        auto m = h.modal();
        const std::vector<int> want = c1 == 0 ? std::vector<int>{0, 0} : std::vector<int>{-1, -1};
        s.add("grauert_mulich_conics", "generic splitting on conics is balanced with gap at most 1",
              m == want && m.size() == 2 && m[0] - m[1] <= 1, json{{"histogram", h.to_json()}, {"expected", want}});
    });
    s.guarded("generic_lines", "generic splitting on lines", [&] {
        auto h = line_histogram(fam, seed, samples);
        const std::vector<int> want = c1 == 0 ? std::vector<int>{0, 0} : std::vector<int>{0, -1};
        s.add("generic_lines", "generic splitting on lines", h.modal() == want,
              json{{"histogram", h.to_json()}, {"expected", want}});
    });
}

void c0_checks(Suite& s, json& info, const BundleFamily<Fp>& fam, std::uint64_t seed, std::size_t samples) {
    loci::JumpOracle<Fp> o(fam);
    const int c2 = o.c2();
    std::optional<loci::LocusPolynomial<Fp>> j1;
    s.guarded("j1_degree", "jumping lines form a curve of degree c2", [&] {
        j1 = loci::j1_poly_c0(fam);
        s.add("j1_degree", "jumping lines form a curve of degree c2", j1->degree() == c2,
              json{{"degree", j1->degree()}, {"c2", c2}});
    });
    if (j1) {
        s.guarded("j1_agreement", "determinant J1 vanishes exactly on jumping lines", [&] {
            std::vector<Vec3> lines = loci::points_on_curve(j1->poly, seed, 20);
            for (std::size_t i = 0; i < samples; ++i) {
                std::mt19937_64 rng(loci::task_seed(seed, "verify/j1_lines", i));
                lines.push_back(sheafkit::random_nonzero_vec3<Fp>(rng));
            }
            auto ok = loci::parallel_map<int>(lines.size(), [&](std::size_t i) {
                return int(j1->poly.evaluate(std::span<const Fp>(lines[i])).is_zero() == o.line(lines[i]).jumping);
            });
            auto it = std::find(ok.begin(), ok.end(), 0);
            s.add("j1_agreement", "determinant J1 vanishes exactly on jumping lines", it == ok.end(),
                  json{{"lines", lines.size()}}, it == ok.end() ? json(nullptr) : v3(lines[it - ok.begin()]));
        });
    }
    std::optional<loci::FitResult> fit;
    s.guarded("j2_fit", "jumping conics form a hypersurface of degree c2", [&] {
        fit = loci::fit_j2_c0(fam, seed);
        s.add("j2_fit", "jumping conics form a hypersurface of degree c2",
              fit->locus.degree() == c2 && fit->fit_dimension == 1,
              json{{"degree", fit->locus.degree()},
                   {"fit_dimension", fit->fit_dimension},
                   {"samples_used", fit->samples.size()},
                   {"pencils", fit->pencils},
                   {"max_jump", fit->max_jump}});
        info["j2"] = locus_json(fit->locus, seed, fit->samples.size(), json::object());
    });
    if (!fit) return;
    const auto& P = fit->locus;
    s.guarded("closure", "products of a jumping line with any line lie on J2", [&] {
        auto l = loci::find_jumping_line(fam, seed);
        const int hits = loci::closure_check(P, l, seed);
        s.add("closure", "products of a jumping line with any line lie on J2", hits == 20,
              json{{"line", v3(l)}, {"on_locus", hits}, {"tried", 20}});
    });
    s.guarded("multiplicity", "pencil intersection multiplicity at a conic of jump size a is at least a", [&] {
        std::mt19937_64 rng(loci::task_seed(seed, "verify/multiplicity", 0));
        json open = json::array(), bad = nullptr;
        std::size_t n = 0;
        for (const auto& smp : fit->samples) {
            if (!smp.smooth) continue;
            loci::PencilProbe<Fp> probe(smp.xi, random6(rng));
            auto rep = loci::pencil_multiplicity(o, P, probe, Fp(0), seed);
            if (!rep.ok && bad.is_null()) bad = json{{"conic", v6(smp.xi)}, {"ord", rep.ord}, {"a", rep.a}};
            open.push_back(json{{"a", rep.a}, {"ord", rep.ord}, {"alpha_gcd_ord", rep.alpha_gcd_ord.value_or(-1)}});
            if (++n == 40) break;
        }
        info["alpha_gcd_ord_vs_multiplicity"] = open;
        s.add("multiplicity", "pencil intersection multiplicity at a conic of jump size a is at least a",
              bad.is_null() && n > 0, json{{"conics", n}}, bad);
    });
    s.guarded("j2_membership", "fitted J2 vanishes exactly on jumping conics", [&] {
        std::vector<Vec6> xs;
        for (const auto& smp : fit->samples) xs.push_back(smp.xi);
        for (std::size_t i = 0; i < samples; ++i) {
            std::mt19937_64 rng(loci::task_seed(seed, "verify/j2_conics", i));
            xs.push_back(random6(rng));
        }
        auto ok = loci::parallel_map<int>(xs.size(), [&](std::size_t i) {
            if (xs[i] == Vec6{}) return 1;
            return int(P.poly.evaluate(std::span<const Fp>(xs[i])).is_zero() == o.conic(ConicForm<Fp>(xs[i])).jumping);
        });
        auto it = std::find(ok.begin(), ok.end(), 0);
        s.add("j2_membership", "fitted J2 vanishes exactly on jumping conics", it == ok.end(),
              json{{"conics", xs.size()}}, it == ok.end() ? json(nullptr) : v6(xs[it - ok.begin()]));
    });
    s.guarded("sym2_consistency", "h1(C; S2 E_C) = 2a - 1 for a >= 1 and 0 for a = 0", [&] {
        std::vector<Vec6> xs;
        for (const auto& smp : fit->samples)
            if (smp.smooth && xs.size() < 100) xs.push_back(smp.xi);
        for (std::size_t i = 0; xs.size() < 200; ++i) {
            std::mt19937_64 rng(loci::task_seed(seed, "verify/sym2", i));
            xs.push_back(sheafkit::random_smooth_conic<Fp>(rng).xi());
        }
        auto ok = loci::parallel_map<int>(xs.size(), [&](std::size_t i) {
            ConicForm<Fp> C(xs[i]);
            const int a = *o.conic(C).a;
            const auto h = o.h1_sym2(C);
            return int(h == static_cast<std::size_t>(a >= 1 ? 2 * a - 1 : 0));
        });
        auto it = std::find(ok.begin(), ok.end(), 0);
        s.add("sym2_consistency", "h1(C; S2 E_C) = 2a - 1 for a >= 1 and 0 for a = 0", it == ok.end(),
              json{{"conics", xs.size()}}, it == ok.end() ? json(nullptr) : v6(xs[it - ok.begin()]));
    });
}

void cm1_checks(Suite& s, json& info, const BundleFamily<Fp>& fam, std::uint64_t seed, std::size_t samples) {
    loci::JumpOracle<Fp> o(fam);
    const int c2 = o.c2();
    std::optional<loci::LocusPolynomial<Fp>> j2;
    s.guarded("j2_degree", "jumping conics form a hypersurface of degree c2 - 1", [&] {
        j2 = loci::j2_det_cm1(fam);
        s.add("j2_degree", "jumping conics form a hypersurface of degree c2 - 1", j2->degree() == c2 - 1,
              json{{"degree", j2->degree()}, {"c2", c2}});
        info["j2"] = locus_json(*j2, seed, 0, json::object());
    });
    if (!j2) return;
    s.guarded("second_kind_degree", "lines of the second kind form a curve of degree 2(c2 - 1)", [&] {
        auto sk = loci::second_kind_curve(*j2);
        s.add("second_kind_degree", "lines of the second kind form a curve of degree 2(c2 - 1)",
              sk.degree() == 2 * (c2 - 1), json{{"degree", sk.degree()}, {"expected", 2 * (c2 - 1)}});
        info["second_kind"] = locus_json(sk, seed, 0, json::object());
    });
    s.guarded("second_kind_consistency", "J2 on a double line vanishes iff the double line carries a section", [&] {
        auto sk = loci::second_kind_curve(*j2);
        auto lines = loci::points_on_curve(sk.poly, seed, 20);
        for (int i = 0; i < 40; ++i) {
            std::mt19937_64 rng(loci::task_seed(seed, "verify/double_lines", i));
            lines.push_back(sheafkit::random_nonzero_vec3<Fp>(rng));
        }
        json bad = nullptr;
        for (const auto& l : lines) {
            auto C = ConicForm<Fp>::double_line(l);
            const bool on = j2->poly.evaluate(std::span<const Fp>(C.xi())).is_zero();
            if (on != (cohom::h0_on_divisor(fam.bundle, C.poly(), 0) > 0) && bad.is_null()) bad = v3(l);
        }
        s.add("second_kind_consistency", "J2 on a double line vanishes iff the double line carries a section",
              bad.is_null(), json{{"double_lines", lines.size()}}, bad);
    });
    if (c2 <= 3) {
        s.guarded("jumping_lines", "finitely many jumping lines, generically c2 choose 2", [&] {
            auto ls = loci::jlines_cm1(fam, seed);
            const int binom = c2 * (c2 - 1) / 2;
            json found = json::array();
            for (const auto& l : ls) found.push_back(v3(l));
            info["jumping_lines"] = found;
            const bool pass = c2 == 2 ? ls.size() == 1 : static_cast<int>(ls.size()) <= binom;
            s.add("jumping_lines", "finitely many jumping lines, generically c2 choose 2", pass,
                  json{{"count", ls.size()}, {"generic_count", binom}, {"lines", found}});
        });
    }
    s.guarded("j2_membership", "determinant J2 vanishes exactly on jumping conics", [&] {
        std::vector<Vec6> xs;
        for (std::size_t i = 0; i < samples; ++i) {
            std::mt19937_64 rng(loci::task_seed(seed, "verify/j2_conics", i));
            auto a = random6(rng), b = random6(rng);
            xs.push_back(a);
            // Every fourth sample is moved onto J2 along a pencil.
            if (i % 4 != 0) continue;
            auto r = algebra::restrict_to_pencil(j2->poly, std::span<const Fp>(a), std::span<const Fp>(b));
            if (r.is_zero()) continue;
            for (const auto& t : algebra::roots_in_field(r)) {
                Vec6 x;
                for (int k = 0; k < 6; ++k) x[k] = a[k] + t * b[k];
                xs.push_back(x);
            }
        }
        auto ok = loci::parallel_map<int>(xs.size(), [&](std::size_t i) {
            if (xs[i] == Vec6{}) return 1;
            return int(j2->poly.evaluate(std::span<const Fp>(xs[i])).is_zero() == o.conic(ConicForm<Fp>(xs[i])).jumping);
        });
        auto it = std::find(ok.begin(), ok.end(), 0);
        s.add("j2_membership", "determinant J2 vanishes exactly on jumping conics", it == ok.end(),
              json{{"conics", xs.size()}}, it == ok.end() ? json(nullptr) : v6(xs[it - ok.begin()]));
    });
    s.guarded("multiplicity", "pencil multiplicities are at least the jump size and sum to c2 - 1", [&] {
        json sums = json::array(), bad = nullptr;
        std::size_t pencils = 0;
        for (std::uint64_t i = 0; pencils < 20 && i < 400; ++i) {
            std::mt19937_64 rng(loci::task_seed(seed, "verify/pencils", i));
            loci::PencilProbe<Fp> probe(random6(rng), random6(rng));
            auto r = algebra::restrict_to_pencil(j2->poly, std::span<const Fp>(probe.xi0), std::span<const Fp>(probe.xi1));
            auto roots = algebra::roots_in_field(r);
            if (roots.empty()) continue;
            ++pencils;
            for (const auto& t : roots) {
                auto rep = loci::pencil_multiplicity(o, *j2, probe, t, seed);
                if ((!rep.ok || *rep.root_sum + *rep.remainder_degree != c2 - 1) && bad.is_null())
                    bad = json{{"xi0", v6(probe.xi0)}, {"xi1", v6(probe.xi1)}, {"t", coeff_string(t)}, {"ord", rep.ord},
                               {"a", rep.a}};
                if (t == roots.front()) sums.push_back(*rep.root_sum);
            }
        }
        s.add("multiplicity", "pencil multiplicities are at least the jump size and sum to c2 - 1",
              bad.is_null() && pencils == 20, json{{"pencils", pencils}, {"rational_root_sums", sums}}, bad);
    });
}

void family_checks(Suite& s, const BundleFamily<Fp>& fam, std::uint64_t seed, std::size_t samples) {
    loci::JumpOracle<Fp> o(fam);
    switch (fam.tag) {
    case FamilyTag::Type02: {
        loci::Type02Predicates<Fp> t(fam);
        s.guarded("wedge_lines", "pq is jumping iff f(p) ^ f(q) = 0", [&] {
            auto j1 = loci::j1_poly_c0(fam);
            std::vector<std::pair<Vec3, Vec3>> pairs;
            for (const auto& l : loci::points_on_curve(j1.poly, seed, 20)) {
                auto g = sheafkit::line_param(l);
                Vec3 p, q;
                for (int k = 0; k < 3; ++k) {
                    p[k] = g[k].coeff(0);
                    q[k] = g[k].coeff(1);
                }
                pairs.emplace_back(p, q);
            }
            for (std::size_t i = 0; i < samples; ++i) {
                std::mt19937_64 rng(loci::task_seed(seed, "verify/wedge", i));
                auto p = sheafkit::random_nonzero_vec3<Fp>(rng), q = sheafkit::random_nonzero_vec3<Fp>(rng);
                if (sheafkit::cross<Fp>(p, q) != Vec3{}) pairs.emplace_back(p, q);
            }
            auto ok = loci::parallel_map<int>(pairs.size(), [&](std::size_t i) {
                auto [p, q] = pairs[i];
                return int(t.line_test(p, q) == o.line(loci::normalize3(sheafkit::cross<Fp>(p, q))).jumping);
            });
            auto it = std::find(ok.begin(), ok.end(), 0);
            s.add("wedge_lines", "pq is jumping iff f(p) ^ f(q) = 0", it == ok.end(), json{{"lines", pairs.size()}},
                  it == ok.end() ? json(nullptr)
                                 : json{{"p", v3(pairs[it - ok.begin()].first)}, {"q", v3(pairs[it - ok.begin()].second)}});
        });
        s.guarded("wedge_conics", "u ^ v ^ f(x) = 0 is a jumping conic", [&] {
            json bad = nullptr;
            for (int i = 0; i < 100; ++i) {
                std::mt19937_64 rng(loci::task_seed(seed, "verify/wedge_conics", i));
                std::array<Fp, 4> u, v;
                for (auto& x : u) x = Fp::random(rng);
                for (auto& x : v) x = Fp::random(rng);
                auto eq = t.conic_eq(u, v);
                if (eq.is_zero()) continue;
                auto C = ConicForm<Fp>::from_poly(eq);
                if (!o.conic(C).jumping && bad.is_null()) bad = v6(C.xi());
            }
            s.add("wedge_conics", "u ^ v ^ f(x) = 0 is a jumping conic", bad.is_null(), json{{"conics", 100}}, bad);
        });
        s.guarded("j1_elimination", "interpolated line predicate equals the determinant J1", [&] {
            auto jc = t.j1_conic(seed);
            s.add("j1_elimination", "interpolated line predicate equals the determinant J1",
                  algebra::proportional(jc.poly, loci::j1_poly_c0(fam).poly), json{{"text", jc.poly.to_string()}});
        });
        s.guarded("schubert_counts", "zeros of a section 3; hyperplane points 1; conic pair points 4", [&] {
            std::mt19937_64 rng(loci::task_seed(seed, "verify/schubert", 0));
            auto r4 = [&] {
                std::array<Fp, 4> v;
                for (auto& x : v) x = Fp::random(rng);
                return v;
            };
            const auto a = t.section_zeros(r4()).length, b = t.hyperplane_points(r4()).length,
                       c = t.conic_pair_points(r4(), r4(), r4(), r4()).length;
            s.add("schubert_counts", "zeros of a section 3; hyperplane points 1; conic pair points 4",
                  a == 3 && b == 1 && c == 4, json{{"section_zeros", a}, {"hyperplane_points", b}, {"conic_pair_points", c}});
        });
        break;
    }
    case FamilyTag::Type03General: {
        loci::Type03Geometry<Fp> g(fam);
        s.guarded("ramification_cubic", "the ramification divisor is the cubic det F", [&] {
            auto R = g.ram_cubic();
            auto sing = loci::singular_locus(R.poly);
            s.add("ramification_cubic", "the ramification divisor is the cubic det F", R.degree() == 3,
                  json{{"poly", poly_json(R.poly)}, {"text", R.raw().to_string()}, {"singular_points", sing.distinct}});
        });
        s.guarded("ramification_lines", "ramification points map to jumping lines", [&] {
            auto j1 = loci::j1_poly_c0(fam);
            auto pts = g.sample_ram_points(50, seed);
            json bad = nullptr;
            for (const auto& p : pts) {
                auto l = g.jline_from_ram(p);
                if (!j1.poly.evaluate(std::span<const Fp>(l)).is_zero() && bad.is_null()) bad = v3(p);
            }
            s.add("ramification_lines", "ramification points map to jumping lines", bad.is_null(),
                  json{{"points", pts.size()}}, bad);
        });
        s.guarded("jump_size_two", "Z(sigma ^ s) is a conic of jump size 2", [&] {
            auto xi = loci::forced_sample(fam, seed);
            auto c = g.classify(ConicForm<Fp>(xi));
            s.add("jump_size_two", "Z(sigma ^ s) is a conic of jump size 2", c.item == 5 && c.sigma.has_value(),
                  json{{"conic", v6(xi)}, {"splitting_e1", splitting_json(c.splitting)},
                       {"sigma", c.sigma ? v3(*c.sigma) : json(nullptr)}, {"s", c.s ? v3(*c.s) : json(nullptr)}});
        });
        s.guarded("conic_classification", "conic classes follow the splitting of E(1)", [&] {
            std::map<int, int> counts;
            for (int i = 0; i < 50; ++i) {
                std::mt19937_64 rng(loci::task_seed(seed, "verify/classify", i));
                ++counts[g.classify(sheafkit::random_smooth_conic<Fp>(rng)).item];
            }
            json cj = json::object();
            for (auto [k, v] : counts) cj[std::to_string(k)] = v;
            s.add("conic_classification", "conic classes follow the splitting of E(1)", counts[3] > 0, json{{"items", cj}});
        });
        break;
    }
    case FamilyTag::Type03NonGeneral:
    case FamilyTag::TypeM12: {
        loci::ModificationTests mt(fam);
        if (fam.tag == FamilyTag::TypeM12) {
            s.guarded("closed_form_hyperplane", "a00 xi00 + a01 xi01 + a11 xi11 = 0 is the jumping locus", [&] {
                auto h = loci::m12_hyperplane(fam);
                s.add("closed_form_hyperplane", "a00 xi00 + a01 xi01 + a11 xi11 = 0 is the jumping locus",
                      algebra::proportional(h.poly, loci::j2_det_cm1(fam).poly), json{{"poly", poly_json(h.poly)}});
            });
        } else {
            std::vector<Fp> lc{fam.line->coeff(0), fam.line->coeff(1), fam.line->coeff(2)};
            Vec3 l{lc[0], lc[1], lc[2]};
            s.guarded("modification_line", "E(1) on the modification line is O(3) + O(-1)", [&] {
                auto st = cohom::splitting_of(sheafkit::pullback(fam.presented, sheafkit::line_param(l)));
                s.add("modification_line", "E(1) on the modification line is O(3) + O(-1)",
                      st.parts == std::vector<int>{3, -1}, json{{"splitting_e1", splitting_json(st)}});
            });
            s.guarded("j1_singular_point", "J1 is a cubic with exactly one singular point, at the modification line", [&] {
                auto j1 = loci::j1_poly_c0(fam);
                auto sing = loci::singular_locus(j1.poly);
                const bool at = loci::singular_at(j1.poly, std::span<const Fp>(lc));
                s.add("j1_singular_point", "J1 is a cubic with exactly one singular point, at the modification line",
                      j1.degree() == 3 && sing.finite && sing.distinct == 1 && at,
                      json{{"singular_points", sing.distinct}, {"at_modification_line", at}});
            });
        }
        s.guarded("kernel_test_agreement", "kernel tests on the modification line agree with the splitting", [&] {
            std::vector<Vec6> xs;
            for (std::size_t i = 0; i < samples; ++i) {
                std::mt19937_64 rng(loci::task_seed(seed, "verify/kernel_conics", i));
                xs.push_back(sheafkit::random_smooth_conic<Fp>(rng).xi());
            }
            if (fam.chern_e.c1 == 0) {
                for (std::uint64_t i = 0; i < 40; ++i)
                    for (const auto& h : loci::detail::pencil_hits(o, loci::task_seed(seed, "verify/kernel_hits", i)))
                        if (h.smooth) xs.push_back(h.xi);
            } else {
                auto j2 = loci::j2_det_cm1(fam);
                for (std::uint64_t i = 0; i < 40; ++i) {
                    std::mt19937_64 rng(loci::task_seed(seed, "verify/kernel_hits", i));
                    auto a = random6(rng), b = random6(rng);
                    auto r = algebra::restrict_to_pencil(j2.poly, std::span<const Fp>(a), std::span<const Fp>(b));
                    for (const auto& t : algebra::roots_in_field(r)) {
                        Vec6 x;
                        for (int k = 0; k < 6; ++k) x[k] = a[k] + t * b[k];
                        if (ConicForm<Fp>(x).is_smooth()) xs.push_back(x);
                    }
                }
            }
            auto ok = loci::parallel_map<int>(xs.size(), [&](std::size_t i) {
                ConicForm<Fp> C(xs[i]);
                return int(mt.test(C).jumping == o.conic(C).jumping);
            });
            auto it = std::find(ok.begin(), ok.end(), 0);
            s.add("kernel_test_agreement", "kernel tests on the modification line agree with the splitting",
                  it == ok.end(), json{{"conics", xs.size()}}, it == ok.end() ? json(nullptr) : v6(xs[it - ok.begin()]));
        });
        break;
    }
    case FamilyTag::Generic: break;
    }
}

} // namespace

json verify_suite(const BundleFamily<Fp>& fam, std::uint64_t seed, std::size_t samples) {
    const auto st = cohom::stability_check(fam.bundle);
    if (st == cohom::Stability::Unstable)
        throw ComputationError("unstable input: stability check failed, verification stopped");
    Suite s;
    s.add("stability", "normalized bundle is stable or semistable", true, json{{"result", cohom::stability_name(st)}});
    json info = json::object();
    common_checks(s, fam, seed, samples);
    if (fam.chern_e.c1 == 0) c0_checks(s, info, fam, seed, samples);
    else cm1_checks(s, info, fam, seed, samples);
    family_checks(s, fam, seed, samples);
    return json{{"checks", s.checks()}, {"all_pass", s.all_pass()}, {"results", info}};
}

} // namespace jumploci::cli
