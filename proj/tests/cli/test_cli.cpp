#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "jumploci/cli/run.hpp"
#include "jumploci/cli/spec_io.hpp"
#include "jumploci/cohom/splitting.hpp"
#include "jumploci/sheafkit/conic.hpp"

using namespace jumploci;
using cli::json;
using cli::RunConfig;

namespace {

const std::string fixture_dir = JUMPLOCI_FIXTURE_DIR;
const std::string binary = JUMPLOCI_BINARY;

std::string fixture(const std::string& name) { return fixture_dir + "/" + name + ".json"; }

RunConfig config(const std::string& command, const std::string& fix) {
    RunConfig c;
    c.command = command;
    c.spec_path = fixture(fix);
    return c;
}

RunConfig inline_spec(const std::string& command, const std::string& text) {
    RunConfig c;
    c.command = command;
    c.spec_text = text;
    return c;
}

int shell(const std::string& args, const std::string& out = "/dev/null") {
    const int st = std::system((binary + " " + args + " > " + out + " 2>/dev/null").c_str());
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* unstable_spec = R"({"field":{"type":"Fp","p":32003},"family":"generic",
  "data":{"rows":[1,-1],"cols":[],"matrix":[[],[]]}})";

} // namespace

TEST_CASE("CLI example: Em12 locus is xi01 of degree 1") {
    auto cfg = config("locus", "em12");
    cfg.field = "Fp:32003";
    auto r = cli::run(cfg);
    REQUIRE(r.exit_code == cli::Ok);
    auto j = json::parse(r.report);
    CHECK(j["schema"] == "1");
    CHECK(j["kind"] == "J2");
    CHECK(j["degree"] == 1);
    CHECK(j["provenance"] == "determinant");
    CHECK(j["poly"] == json{{"0,1,0,0,0,0", "1"}});
    CHECK(j["checks"]["closed_form_match"] == true);
}

TEST_CASE("CLI example: E02 verify passes with modal splitting (0,0)") {
    auto cfg = config("verify", "e02");
    cfg.seed = 7;
    cfg.samples = 2000;
    auto r = cli::run(cfg);
    REQUIRE(r.exit_code == cli::Ok);
    auto j = json::parse(r.report);
    CHECK(j["all_pass"] == true);
    for (auto& [name, c] : j["checks"].items()) {
        INFO(name);
        CHECK(c["pass"] == true);
        CHECK(c["anchor"].is_string());
    }
    CHECK(j["checks"]["grauert_mulich_conics"]["detail"]["histogram"]["modal"] == json::array({0, 0}));
}

TEST_CASE("CLI example: E03 splitting on a smooth conic") {
    auto cfg = config("splitting", "e03");
    cfg.conic = "1,0,0,1,0,1";
    auto r = cli::run(cfg);
    REQUIRE(r.exit_code == cli::Ok);
    auto j = json::parse(r.report);
    CHECK(j["splitting"]["parts"] == json::array({2, -2}));
    CHECK(j["jump"]["a"] == 2);
}

TEST_CASE("Em12 verify includes the second-kind degree check") {
    auto cfg = config("verify", "em12");
    cfg.samples = 200;
    auto r = cli::run(cfg);
    REQUIRE(r.exit_code == cli::Ok);
    auto j = json::parse(r.report);
    CHECK(j["all_pass"] == true);
    REQUIRE(j["checks"].contains("second_kind_degree"));
    CHECK(j["checks"]["second_kind_degree"]["pass"] == true);
}

TEST_CASE("every command succeeds on every fixture") {
    for (const char* fix : {"e02", "e03", "e03ng", "em12"}) {
        for (const char* cmd : {"jlines", "jconics", "locus", "sample"}) {
            const std::string where = std::string(fix) + " " + cmd;
            INFO(where);
            auto cfg = config(cmd, fix);
            if (std::string(cmd) != "locus") cfg.samples = 50;
            auto r = cli::run(cfg);
            CHECK(r.exit_code == cli::Ok);
            CHECK(r.error.empty());
        }
        auto cfg = config("splitting", fix);
        cfg.line = "1,2,3";
        CHECK(cli::run(cfg).exit_code == cli::Ok);
    }
}

TEST_CASE("validation failures exit 2 with a field diagnostic") {
    struct Case {
        RunConfig cfg;
        std::string needle;
    };
    std::vector<Case> cases;
    cases.push_back({inline_spec("locus", "{not json"), ""});
    cases.push_back({inline_spec("locus", R"({"field":{"type":"Q"},"family":"nope","data":{}})"), "family"});
    cases.push_back({inline_spec("locus", R"({"field":{"type":"Q"},"family":"m12","data":{"line":"x2","psi":["x0^2","x1^2"],"extra":1}})"),
                     "data.extra"});
    cases.push_back({inline_spec("locus", R"({"field":{"type":"Q"},"family":"m12","data":{"line":"x2","psi":["x0^2","x1^"]}})"),
                     "data.psi[1]"});
    cases.push_back({inline_spec("locus", R"({"field":{"type":"Q"},"family":"m12","data":{"line":"x2","psi":["x0^2"]}})"), "data.psi"});
    cases.push_back({inline_spec("locus", R"({"field":{"type":"Fp","p":32004},"family":"m12","data":{"line":"x2","psi":["x0^2","x1^2"]}})"),
                     "field"});
    cases.push_back({inline_spec("locus", R"({"field":{"type":"Q"},"family":"m12","data":{"line":"x2","psi":["x0^2","x1^2"]},"bogus":0})"),
                     "bogus"});
    {
        auto c = config("splitting", "e03");
        c.conic = "1,0,0,1,0";
        cases.push_back({c, "conic"});
    }
    {
        auto c = config("splitting", "e03");
        c.conic = "1,0,0,1,0,1";
        c.line = "1,0,0";
        cases.push_back({c, ""});
    }
    {
        auto c = config("locus", "e03");
        c.field = "Fp:15";
        cases.push_back({c, ""});
    }
    {
        auto c = config("locus", "e03");
        c.kind = "J7";
        cases.push_back({c, ""});
    }
    {
        auto c = config("splitting", "e03");
        c.window = "5";
        c.line = "1,0,0";
        cases.push_back({c, ""});
    }
    {
        auto c = config("frobnicate", "e03");
        cases.push_back({c, ""});
    }
    cases.push_back({config("locus", "does_not_exist"), ""});
    for (const auto& k : cases) {
        auto r = cli::run(k.cfg);
        INFO(r.error);
        CHECK(r.exit_code == cli::ValidationFailure);
        CHECK(r.report.empty());
        CHECK(!r.error.empty());
        if (!k.needle.empty()) CHECK(r.error.find(k.needle) != std::string::npos);
    }
}

TEST_CASE("a fit below the monomial count is a computation error") {
    auto cfg = config("locus", "e03");
    cfg.samples = 50;
    auto r = cli::run(cfg);
    CHECK(r.exit_code == cli::ComputationFailure);
    CHECK(r.error.find("insufficient samples") != std::string::npos);
}

TEST_CASE("unstable input short-circuits verify with exit 3") {
    auto r = cli::run(inline_spec("verify", unstable_spec));
    CHECK(r.exit_code == cli::ComputationFailure);
    CHECK(r.error.find("stab") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical reports") {
    for (const char* fix : {"e02", "e03", "e03ng", "em12"}) {
        for (const char* cmd : {"verify", "sample", "jconics", "locus"}) {
            const std::string where = std::string(fix) + " " + cmd;
            INFO(where);
            auto cfg = config(cmd, fix);
            cfg.seed = 11;
            if (std::string(cmd) != "locus") cfg.samples = 100;
            auto a = cli::run(cfg), b = cli::run(cfg);
            REQUIRE(a.exit_code == cli::Ok);
            CHECK(a.report == b.report);
            cfg.pretty = true;
            auto c = cli::run(cfg), d = cli::run(cfg);
            CHECK(c.report == d.report);
            CHECK(c.report != a.report);
        }
    }
}

TEST_CASE("spec round trip through family data") {
    for (const char* fix : {"e02", "e03", "e03ng", "em12"}) {
        INFO(fix);
        auto s = cli::read_spec_file(fixture(fix));
        algebra::ModulusGuard guard(s.field.p);
        auto fam = cli::build_family<algebra::Fp>(s);
        cli::BundleSpec t = s;
        t.data = cli::family_data(fam);
        auto again = cli::parse_spec(cli::spec_to_json(t));
        auto fam2 = cli::build_family<algebra::Fp>(again);
        CHECK(cli::family_data(fam2) == t.data);
        CHECK(fam2.chern_e == fam.chern_e);
        const auto g = sheafkit::line_param<algebra::Fp>({algebra::Fp(1), algebra::Fp(5), algebra::Fp(7)});
        CHECK(cohom::splitting_of(sheafkit::pullback(fam2.bundle, g)) ==
              cohom::splitting_of(sheafkit::pullback(fam.bundle, g)));
    }
}

TEST_CASE("binary exit codes and --out") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "jumploci_cli_test";
    fs::create_directories(dir);
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();

    CHECK(shell("locus --spec " + fixture("em12"), a) == 0);
    CHECK(shell("locus --spec " + fixture("em12") + " --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(json::parse(slurp(b))["degree"] == 1);

    CHECK(shell("locus --spec " + fixture("missing")) == 2);
    CHECK(shell("locus") == 2);
    CHECK(shell("nonsense --spec " + fixture("em12")) == 2);
    CHECK(shell("splitting --spec " + fixture("e03") + " --conic 1,2") == 2);
    CHECK(shell("locus --spec " + fixture("em12") + " --field Fp:9") == 2);
    CHECK(shell("locus --spec " + fixture("em12") + " --seed notanumber") == 2);

    const std::string unstable = (dir / "unstable.json").string();
    std::ofstream(unstable) << unstable_spec;
    CHECK(shell("verify --spec " + unstable) == 3);
    fs::remove_all(dir);
}
