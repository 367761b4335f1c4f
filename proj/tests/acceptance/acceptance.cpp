// Acceptance run over F_32003: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cech_oracle.hpp"
#include "fixtures.hpp"
#include "jumploci/cli/verify.hpp"
#include "jumploci/cohom/cohomology.hpp"
#include "jumploci/cohom/splitting.hpp"
#include "jumploci/loci/loci.hpp"
#include "jumploci/sheafkit/sym2.hpp"

using namespace jumploci;
using algebra::Fp;
using algebra::HomPoly;
using algebra::Vars;
using sheafkit::BundleFamily;
using sheafkit::ConicForm;

namespace {

// Pinned tolerances. Every comparison is exact; these are the allowed counts of misses.
constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kMaxDisagreements = 0;
constexpr std::size_t kRandomConicsC1 = 1000;
constexpr std::size_t kOnLocusConicsC1 = 250;
constexpr std::size_t kWedgeLines = 10000;
constexpr std::size_t kWedgeConics = 100;
constexpr std::size_t kRamPoints = 50;
constexpr std::size_t kPencils = 20;
constexpr std::size_t kMultiplicityConics = 40;
constexpr std::size_t kGmSamples = 500;
constexpr int kChiLo = -6, kChiHi = 6;
constexpr std::size_t kChiConics = 5;
constexpr std::size_t kCechPresentations = 100;
constexpr std::size_t kSym2Conics = 200;
constexpr int kClosureLines = 20;

using Vec3 = std::array<Fp, 3>;
using Vec6 = std::array<Fp, 6>;

Vec6 random6(std::mt19937_64& rng) {
    Vec6 x;
    for (auto& v : x) v = Fp::random(rng);
    return x;
}

std::mt19937_64 stream(const char* tag, std::uint64_t i = 0) { return std::mt19937_64(loci::task_seed(kSeed, tag, i)); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Smooth conics on the hypersurface P, from roots along random pencils.
std::vector<Vec6> smooth_on(const HomPoly<Fp>& P, const char* tag, std::size_t n) {
    std::vector<Vec6> out;
    for (std::uint64_t i = 0; out.size() < n && i < 50 * n; ++i) {
        auto rng = stream(tag, i);
        auto a = random6(rng), b = random6(rng);
        auto r = algebra::restrict_to_pencil(P, std::span<const Fp>(a), std::span<const Fp>(b));
        if (r.is_zero()) continue;
        for (const auto& t : algebra::roots_in_field(r)) {
            Vec6 x;
            for (int k = 0; k < 6; ++k) x[k] = a[k] + t * b[k];
            if (out.size() < n && ConicForm<Fp>(x).is_smooth()) out.push_back(x);
        }
    }
    return out;
}

void closed_form(Outcome& o) {
    auto fam = fixtures::em12<Fp>();
    auto j2 = loci::j2_det_cm1(fam);
    auto xi01 = HomPoly<Fp>::variable(Vars::XI, 1);
    auto abc = loci::m12_coefficients(fam.psi[0], fam.psi[1]);
    const bool coeffs = abc[0].is_zero() && abc[2].is_zero() && abc[1] == Fp(-1);
    o.require(j2.degree() == 1, "degree 1");
    o.require(algebra::proportional(j2.poly, xi01), "J2 proportional to xi01");
    o.require(coeffs, "(a00, a01, a11) = (0, -1, 0)");
    o.require(algebra::proportional(loci::m12_hyperplane(fam).poly, j2.poly), "closed form equals determinant");

    loci::JumpOracle<Fp> oracle(fam);
    std::vector<Vec6> xs;
    for (std::size_t i = 0; i < kRandomConicsC1; ++i) {
        auto rng = stream("accept/c1/random", i);
        xs.push_back(sheafkit::random_smooth_conic<Fp>(rng).xi());
    }
    auto on = smooth_on(j2.poly, "accept/c1/on", kOnLocusConicsC1);
    xs.insert(xs.end(), on.begin(), on.end());
    auto ok = loci::parallel_map<int>(xs.size(), [&](std::size_t i) {
        ConicForm<Fp> C(xs[i]);
        const bool member = j2.poly.evaluate(std::span<const Fp>(xs[i])).is_zero();
        const auto info = oracle.conic(C);
        return int(member == (info.a && *info.a >= 1));
    });
    const auto bad = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));
    o.require(on.size() == kOnLocusConicsC1, "enough conics on J2");
    o.require(bad <= kMaxDisagreements, "membership agrees with splitting");
    o.detail << "J2 = " << j2.poly.to_string() << "; coefficients (" << abc[0].to_string() << "," << abc[1].to_string()
             << "," << abc[2].to_string() << "); " << xs.size() << " smooth conics (" << on.size() << " on J2), "
             << bad << " disagreements";
}

struct FitCache {
    std::optional<loci::FitResult> e02, e03;
    const loci::FitResult& get(bool three) {
        auto& slot = three ? e03 : e02;
        if (!slot) slot = loci::fit_j2_c0(three ? fixtures::e03<Fp>() : fixtures::e02<Fp>(), kSeed);
        return *slot;
    }
};

void degrees(Outcome& o, FitCache& fits) {
    const auto& a = fits.get(false);
    const auto& b = fits.get(true);
    auto em = loci::j2_det_cm1(fixtures::em12<Fp>());
    o.require(a.locus.degree() == 2 && a.fit_dimension == 1, "E02 fitted degree 2, dimension 1");
    o.require(b.locus.degree() == 3 && b.fit_dimension == 1, "E03 fitted degree 3, dimension 1");
    o.require(em.degree() == 1, "Em12 determinant degree 1");
    o.detail << "E02 deg " << a.locus.degree() << " dim " << a.fit_dimension << " (" << a.samples.size()
             << " samples); E03 deg " << b.locus.degree() << " dim " << b.fit_dimension << " (" << b.samples.size()
             << " samples); Em12 deg " << em.degree();
}

void barth_hulek(Outcome& o) {
    const int d02 = loci::j1_poly_c0(fixtures::e02<Fp>()).degree();
    const int d03 = loci::j1_poly_c0(fixtures::e03<Fp>()).degree();
    auto fam = fixtures::em12<Fp>();
    const int sk = loci::second_kind_curve(loci::j2_det_cm1(fam)).degree();
    auto lines = loci::jlines_cm1(fam, kSeed);
    o.require(d02 == 2 && d03 == 3, "deg J1 = c2");
    o.require(sk == 2, "second-kind degree 2(c2 - 1)");
    o.require(lines.size() == 1, "exactly one jumping line");
    o.require(lines.size() == 1 && lines[0] == Vec3{Fp(0), Fp(0), Fp(1)}, "the line x2 = 0");
    o.detail << "deg J1: E02 " << d02 << ", E03 " << d03 << "; second-kind degree " << sk << "; jumping lines "
             << lines.size();
}

void wedge(Outcome& o) {
    auto fam = fixtures::e02<Fp>();
    loci::Type02Predicates<Fp> t(fam);
    loci::JumpOracle<Fp> oracle(fam);
    auto j1 = loci::j1_poly_c0(fam);
    std::vector<std::pair<Vec3, Vec3>> pairs;
    for (const auto& l : loci::points_on_curve(j1.poly, kSeed, 100)) {
        auto g = sheafkit::line_param(l);
        pairs.emplace_back(Vec3{g[0].coeff(0), g[1].coeff(0), g[2].coeff(0)}, Vec3{g[0].coeff(1), g[1].coeff(1), g[2].coeff(1)});
    }
    const std::size_t jumping_pairs = pairs.size();
    for (std::size_t i = 0; pairs.size() < kWedgeLines + jumping_pairs; ++i) {
        auto rng = stream("accept/wedge/lines", i);
        auto p = sheafkit::random_nonzero_vec3<Fp>(rng), q = sheafkit::random_nonzero_vec3<Fp>(rng);
        if (sheafkit::cross<Fp>(p, q) != Vec3{}) pairs.emplace_back(p, q);
    }
    auto ok = loci::parallel_map<int>(pairs.size(), [&](std::size_t i) {
        auto [p, q] = pairs[i];
        return int(t.line_test(p, q) == oracle.line(loci::normalize3(sheafkit::cross<Fp>(p, q))).jumping);
    });
    const auto bad = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));
    std::size_t conics = 0, jumping = 0;
    for (std::size_t i = 0; conics < kWedgeConics; ++i) {
        auto rng = stream("accept/wedge/conics", i);
        std::array<Fp, 4> u, v;
        for (auto& x : u) x = Fp::random(rng);
        for (auto& x : v) x = Fp::random(rng);
        auto eq = t.conic_eq(u, v);
        if (eq.is_zero()) continue;
        ++conics;
        jumping += loci::jump_size_conic(fam, ConicForm<Fp>::from_poly(eq)).jumping;
    }
    o.require(jumping_pairs == 100, "100 jumping lines in the mix");
    o.require(bad <= kMaxDisagreements, "wedge predicate agrees with splitting");
    o.require(jumping == conics, "every u ^ v ^ f(x) = 0 is jumping");
    o.detail << pairs.size() << " lines (" << jumping_pairs << " on J1), " << bad << " disagreements; " << jumping << "/"
             << conics << " wedge conics jumping";
}

void geometry(Outcome& o) {
    auto fam = fixtures::e03<Fp>();
    loci::Type03Geometry<Fp> g(fam);
    const auto R = g.ram_cubic().raw();
    const auto want = HomPoly<Fp>::monomial(Vars::X, algebra::Exps{1, 1, 1}, Fp(8));
    o.require(R == want, "det F = 8 x0 x1 x2");
    auto j1 = loci::j1_poly_c0(fam);
    auto pts = g.sample_ram_points(kRamPoints, kSeed);
    std::size_t on = 0;
    for (const auto& p : pts) on += j1.poly.evaluate(std::span<const Fp>(g.jline_from_ram(p))).is_zero();
    o.require(pts.size() == kRamPoints && on == pts.size(), "ramification points map onto J1");
    auto z = g.classify(ConicForm<Fp>(loci::forced_sample(fam, kSeed)));
    const auto a = loci::jump_size_conic(fam, ConicForm<Fp>(loci::forced_sample(fam, kSeed))).a;
    o.require(z.item == 5 && a && *a == 2, "Z(sigma ^ s) has jump size 2");

    auto ng = fixtures::e03ng<Fp>();
    auto st = cohom::splitting_of(sheafkit::pullback(ng.presented, sheafkit::line_param(Vec3{Fp(0), Fp(0), Fp(1)})));
    o.require(st.parts == std::vector<int>{3, -1}, "E(1) on the modification line is (3, -1)");
    auto ngj1 = loci::j1_poly_c0(ng);
    auto sing = loci::singular_locus(ngj1.poly);
    o.require(ngj1.degree() == 3 && sing.finite && sing.distinct == 1, "J1 cubic with one singular point");
    o.detail << "det F = " << R.to_string() << "; " << on << "/" << pts.size() << " ram points on J1; Z(sigma^s) jump "
             << (a ? *a : -1) << "; E03ng E(1)|L = " << st.to_string() << ", J1 degree " << ngj1.degree() << " with "
             << sing.distinct << " singular point(s)";
}

void multiplicity(Outcome& o, FitCache& fits) {
    std::size_t checked = 0, ok = 0, twos = 0;
    std::map<std::pair<int, int>, int> gcd_vs_ord;
    for (bool three : {false, true}) {
        auto fam = three ? fixtures::e03<Fp>() : fixtures::e02<Fp>();
        loci::JumpOracle<Fp> oracle(fam);
        const auto& fit = fits.get(three);
        auto rng = stream(three ? "accept/mult/e03" : "accept/mult/e02");
        std::size_t n = 0;
        for (const auto& s : fit.samples) {
            if (!s.smooth) continue;
            loci::PencilProbe<Fp> probe(s.xi, random6(rng));
            auto rep = loci::pencil_multiplicity(oracle, fit.locus, probe, Fp(0), kSeed);
            ++checked;
            ok += rep.ok && rep.a == *s.a;
            twos += rep.a == 2 && rep.ok;
            ++gcd_vs_ord[{rep.ord, rep.alpha_gcd_ord.value_or(-1)}];
            if (++n == kMultiplicityConics) break;
        }
    }
    auto fam = fixtures::em12<Fp>();
    loci::JumpOracle<Fp> oracle(fam);
    auto j2 = loci::j2_det_cm1(fam);
    std::size_t pencils = 0, sums_one = 0;
    for (std::uint64_t i = 0; pencils < kPencils; ++i) {
        auto rng = stream("accept/mult/em12", i);
        loci::PencilProbe<Fp> probe(random6(rng), random6(rng));
        auto r = algebra::restrict_to_pencil(j2.poly, std::span<const Fp>(probe.xi0), std::span<const Fp>(probe.xi1));
        if (r.is_zero()) continue;
        auto roots = algebra::roots_in_field(r);
        // Roots in F_p plus the point at infinity of the pencil.
        int total = j2.degree() - r.degree();
        bool reported = true;
        for (const auto& t : roots) {
            auto rep = loci::pencil_multiplicity(oracle, j2, probe, t, kSeed);
            total += rep.ord;
            reported = reported && rep.ok && rep.root_sum;
            if (t == roots.front() && rep.root_sum) reported = reported && *rep.root_sum + *rep.remainder_degree == 1;
        }
        ++pencils;
        sums_one += total == 1 && reported;
    }
    o.require(checked > 0 && ok == checked, "ord >= a at every sampled conic");
    o.require(twos >= 1, "an a = 2 sample from E03");
    o.require(sums_one == kPencils, "Em12 pencil sums equal c2 - 1 = 1");
    o.detail << ok << "/" << checked << " conics with ord >= a (" << twos << " with a = 2); Em12 " << sums_one << "/"
             << pencils << " pencils sum to 1; (ord, alpha gcd ord) counts:";
    for (auto [k, v] : gcd_vs_ord) o.detail << " (" << k.first << "," << k.second << ")x" << v;
}

void grauert_mulich(Outcome& o) {
    const std::vector<std::pair<const char*, BundleFamily<Fp>>> fams{{"E02", fixtures::e02<Fp>()},
                                                                     {"E03", fixtures::e03<Fp>()},
                                                                     {"E03ng", fixtures::e03ng<Fp>()},
                                                                     {"Em12", fixtures::em12<Fp>()}};
    for (const auto& [name, fam] : fams) {
        const bool c0 = fam.chern_e.c1 == 0;
        auto hc = cli::conic_histogram(fam, kSeed, kGmSamples);
        auto hl = cli::line_histogram(fam, kSeed, kGmSamples);
        const auto mc = hc.modal(), ml = hl.modal();
        const std::vector<int> want_c = c0 ? std::vector<int>{0, 0} : std::vector<int>{-1, -1};
        const std::vector<int> want_l = c0 ? std::vector<int>{0, 0} : std::vector<int>{0, -1};
        o.require(hc.total == kGmSamples && mc == want_c && mc[0] - mc[1] <= 1, std::string(name) + " conics");
        o.require(hl.total == kGmSamples && ml == want_l, std::string(name) + " lines");
        o.detail << " " << name << ": conic mode (" << mc[0] << "," << mc[1] << ") " << hc.counts[mc] << "/" << hc.total
                 << ", line mode (" << ml[0] << "," << ml[1] << ") " << hl.counts[ml] << "/" << hl.total << ";";
    }
}

void euler(Outcome& o) {
    std::size_t checked = 0;
    for (const auto& fam : {fixtures::e02<Fp>(), fixtures::e03<Fp>(), fixtures::e03ng<Fp>(), fixtures::em12<Fp>()})
        for (int k = kChiLo; k <= kChiHi; ++k) {
            auto h = cohom::hypercohomology(fam.bundle, k);
            o.require(h.h0 - h.h1 + h.h2 == sheafkit::riemann_roch_p2(2, fam.chern_e, k), "chi on P2");
            ++checked;
        }
    auto em = fixtures::em12<Fp>();
    auto j2 = loci::j2_det_cm1(em);
    std::vector<Vec6> xs = smooth_on(j2.poly, "accept/chi/on", 2);
    o.require(xs.size() == 2, "two jumping conics");
    for (std::size_t i = 0; xs.size() < kChiConics; ++i) {
        auto rng = stream("accept/chi/conics", i);
        xs.push_back(sheafkit::random_smooth_conic<Fp>(rng).xi());
    }
    std::size_t conic_checks = 0;
    for (const auto& xi : xs) {
        auto C = sheafkit::parameterized(ConicForm<Fp>(xi));
        auto prof = cohom::h0_profile_p1(sheafkit::pullback(em.bundle, *C.param()), 2 * kChiLo, 2 * kChiHi);
        for (int k = kChiLo; k <= kChiHi; ++k) {
            o.require(prof.h0.at(2 * k) - prof.h1.at(2 * k) == 4 * k, "chi(C; E_C(k)) = 4k");
            ++conic_checks;
        }
    }
    o.detail << checked << " (fixture, k) pairs on P2; " << conic_checks << " (conic, k) pairs for Em12 including "
             << "2 jumping conics";
}

void oracles(Outcome& o, FitCache& fits) {
    const std::vector<BundleFamily<Fp>> fams{fixtures::e02<Fp>(), fixtures::e03<Fp>(), fixtures::e03ng<Fp>(),
                                             fixtures::em12<Fp>()};
    std::size_t agree = 0;
    for (std::size_t i = 0; i < kCechPresentations; ++i) {
        auto rng = stream("accept/cech", i);
        const auto& fam = fams[i % fams.size()];
        sheafkit::CurveParam<Fp> g;
        if (i % 3 == 0) g = sheafkit::line_param(sheafkit::random_nonzero_vec3<Fp>(rng));
        else g = *sheafkit::random_smooth_conic<Fp>(rng).param();
        auto r = sheafkit::pullback(fam.bundle, g);
        const int k = static_cast<int>(rng() % 7) - 3;
        auto prof = cohom::h0_profile_p1(r, k, k);
        auto c = oracle::cech_hypercohomology(r, k);
        agree += prof.h0.at(k) == c[0] && prof.h1.at(k) == c[1];
    }
    o.require(agree == kCechPresentations, "P1 profiles agree with the Cech oracle");
    o.detail << agree << "/" << kCechPresentations << " pullbacks agree with Cech;";

    for (bool three : {false, true}) {
        auto fam = three ? fixtures::e03<Fp>() : fixtures::e02<Fp>();
        loci::JumpOracle<Fp> oracle(fam);
        auto s2 = sheafkit::sym2_resolution(fam.bundle);
        std::vector<Vec6> xs;
        for (const auto& s : fits.get(three).samples)
            if (s.smooth && xs.size() < kSym2Conics / 2) xs.push_back(s.xi);
        for (std::size_t i = 0; xs.size() < kSym2Conics; ++i) {
            auto rng = stream(three ? "accept/sym2/e03" : "accept/sym2/e02", i);
            xs.push_back(sheafkit::random_smooth_conic<Fp>(rng).xi());
        }
        auto ok = loci::parallel_map<int>(xs.size(), [&](std::size_t i) {
            ConicForm<Fp> C(xs[i]);
            const int a = *oracle.conic(C).a;
            const auto want = static_cast<std::int64_t>(a >= 1 ? 2 * a - 1 : 0);
            // h1(C; S2 E_C) = h0 - chi with chi = 3 on a conic when c1 = 0.
            const auto divisor = cohom::h0_on_divisor(s2, C.poly(), 0) - 3;
            return int(divisor == want && static_cast<std::int64_t>(oracle.h1_sym2(C)) == want);
        });
        const auto good = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
        o.require(good == kSym2Conics, three ? "E03 S2 consistency" : "E02 S2 consistency");
        o.detail << " " << (three ? "E03" : "E02") << " S2 " << good << "/" << xs.size() << ";";
    }
}

void closure(Outcome& o, FitCache& fits) {
    for (bool three : {false, true}) {
        auto fam = three ? fixtures::e03<Fp>() : fixtures::e02<Fp>();
        auto l = loci::find_jumping_line(fam, kSeed);
        const int hits = loci::closure_check(fits.get(three).locus, l, kSeed, kClosureLines);
        o.require(hits == kClosureLines, three ? "E03 closure" : "E02 closure");
        o.detail << " " << (three ? "E03" : "E02") << " " << hits << "/" << kClosureLines << ";";
    }
}

} // namespace

int main() {
    algebra::ModulusGuard guard(32003);
    FitCache fits;
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"closed-form jumping hyperplane of the (-1,2) bundle", closed_form},
        {"degrees of the jumping-conic hypersurface", [&](Outcome& o) { degrees(o, fits); }},
        {"jumping-line and second-kind degrees", barth_hulek},
        {"wedge predicates for the (0,2) bundle", wedge},
        {"(0,3) ramification geometry and modification line", geometry},
        {"pencil multiplicity at least the jump size", [&](Outcome& o) { multiplicity(o, fits); }},
        {"generic splitting on conics and lines", grauert_mulich},
        {"Euler characteristics on P2 and on conics", euler},
        {"Cech oracle and S2 consistency", [&](Outcome& o) { oracles(o, fits); }},
        {"products with a jumping line lie on J2", [&](Outcome& o) { closure(o, fits); }},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("criterion %2zu: %s  %s  (%.1fs) %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %zu/%zu criteria pass (%.1fs)\n", criteria.size() - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
