#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>

#include "jumploci/cli/run.hpp"
#include "jumploci/cli/spec_io.hpp"
#include "jumploci/cohom/cohomology.hpp"

namespace py = pybind11;
using namespace jumploci;

namespace {

std::tuple<int, std::string, std::string> run(const std::string& command, const std::string& spec,
                                              std::optional<std::string> field, std::uint64_t seed,
                                              std::optional<long long> samples, std::optional<std::string> window,
                                              std::optional<std::string> conic, std::optional<std::string> line,
                                              std::optional<std::string> kind, bool pretty) {
    cli::RunConfig cfg;
    cfg.command = command;
    cfg.spec_text = spec;
    cfg.field = std::move(field);
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.window = std::move(window);
    cfg.conic = std::move(conic);
    cfg.line = std::move(line);
    cfg.kind = std::move(kind);
    cfg.pretty = pretty;
    cli::RunResult r;
    {
        py::gil_scoped_release release;
        r = cli::run(cfg);
    }
    return {r.exit_code, r.report, r.error};
}

// (h0, h1, h2) of E(k) over F_p.
std::tuple<std::int64_t, std::int64_t, std::int64_t> cohomology(const std::string& spec_text, int k) {
    auto spec = cli::parse_spec_text(spec_text);
    if (spec.field.rational) throw py::value_error("cohomology needs a prime field");
    algebra::ModulusGuard guard(spec.field.p);
    auto fam = cli::build_family<algebra::Fp>(spec);
    auto c = cohom::hypercohomology(fam.bundle, k);
    return {c.h0, c.h1, c.h2};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Splitting types and jumping loci of rank-2 bundles on P2";
    py::register_exception<cli::ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("run", &run, py::arg("command"), py::arg("spec"), py::arg("field") = py::none(), py::arg("seed") = 1,
          py::arg("samples") = py::none(), py::arg("window") = py::none(), py::arg("conic") = py::none(),
          py::arg("line") = py::none(), py::arg("kind") = py::none(), py::arg("pretty") = false,
          "Run a CLI command on an inline spec; returns (exit_code, report, error).");
    m.def("cohomology", &cohomology, py::arg("spec"), py::arg("k"));
    m.def(
        "riemann_roch_p2",
        [](int rank, std::int64_t c1, std::int64_t c2, int k) { return sheafkit::riemann_roch_p2(rank, {c1, c2}, k); },
        py::arg("rank"), py::arg("c1"), py::arg("c2"), py::arg("k"));
    m.attr("schema_version") = "1";
}
