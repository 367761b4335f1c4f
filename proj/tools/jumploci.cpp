#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "jumploci/cli/run.hpp"

namespace {

struct Flags {
    std::string spec, field, window, conic, line, kind, out;
    std::uint64_t seed = 1;
    long long samples = -1;
    bool pretty = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--spec", f.spec, "Bundle-spec JSON file")->required();
    sub->add_option("--field", f.field, "Fp:P or Q (overrides the field of --spec)");
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--samples", f.samples, "Sample count");
    sub->add_option("--out", f.out, "Write the report here instead of stdout");
    sub->add_flag("--pretty", f.pretty, "Plain-text rendering");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Splitting types, jumping lines and jumping conics of rank-2 bundles on P2"};
    app.require_subcommand(1);
    Flags f;
    auto* splitting = app.add_subcommand("splitting", "Splitting type on a line or conic");
    auto* jlines = app.add_subcommand("jlines", "Jumping lines");
    auto* jconics = app.add_subcommand("jconics", "Jumping conics: test one or sample several");
    auto* locus = app.add_subcommand("locus", "Locus polynomial J1, J2, R or second_kind");
    auto* verify = app.add_subcommand("verify", "Run every applicable property check");
    auto* sample = app.add_subcommand("sample", "Splitting histograms over random lines and conics");
    for (auto* s : {splitting, jlines, jconics, locus, verify, sample}) add_common(s, f);
    splitting->add_option("--line", f.line, "l0,l1,l2");
    splitting->add_option("--conic", f.conic, "xi00,xi01,xi02,xi11,xi12,xi22");
    splitting->add_option("--window", f.window, "Twist window LO:HI on P1");
    jconics->add_option("--conic", f.conic, "xi00,xi01,xi02,xi11,xi12,xi22");
    locus->add_option("--kind", f.kind, "J1, J2, R or second_kind (default J2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : jumploci::cli::ValidationFailure;
    }

    jumploci::cli::RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.spec_path = f.spec;
    cfg.seed = f.seed;
    cfg.pretty = f.pretty;
    if (!f.field.empty()) cfg.field = f.field;
    if (f.samples != -1) cfg.samples = f.samples;
    if (!f.window.empty()) cfg.window = f.window;
    if (!f.conic.empty()) cfg.conic = f.conic;
    if (!f.line.empty()) cfg.line = f.line;
    if (!f.kind.empty()) cfg.kind = f.kind;

    auto res = jumploci::cli::run(cfg);
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.error << "\n";
        return res.exit_code;
    }
    if (f.out.empty()) {
        std::cout << res.report;
    } else {
        std::ofstream o(f.out, std::ios::binary);
        if (!o) {
            std::cerr << "error: cannot write " << f.out << "\n";
            return jumploci::cli::ValidationFailure;
        }
        o << res.report;
    }
    return 0;
}
