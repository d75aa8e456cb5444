#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "teichlab/catalog.hpp"
#include "teichlab/commands.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/integrate.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/measure.hpp"
#include "teichlab/pants.hpp"
#include "teichlab/selftest.hpp"

namespace py = pybind11;
using namespace teichlab;

namespace {

// JSON crosses the boundary as text; the python side wraps it with the json module.
std::string runCommandText(const std::string& command, const std::string& configText, std::optional<std::uint64_t> seed,
                           std::optional<std::int64_t> samples, const std::string& baseDir) {
    CommandOptions opt;
    opt.seed = seed;
    opt.samples = samples;
    opt.baseDir = baseDir;
    CommandResult r = runCommand(command, parseJsonText(configText, "config"), opt);
    if (r.failedCheck) throw AssumptionViolated(*r.failedCheck);
    return r.content;
}

}  // namespace

PYBIND11_MODULE(_teichlab, m) {
    m.doc() = "Hyperbolic length spectra, level-set densities and orbit counts";

    // translators registered later are tried first, so the base class goes first
    auto& base = py::register_exception<Error>(m, "TeichlabError");
    py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
    py::register_exception<NonHyperbolicElement>(m, "NonHyperbolicElement", base.ptr());
    py::register_exception<AssumptionViolated>(m, "AssumptionViolated", base.ptr());

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
    m.def("command_names", &commandNames);
    m.def("run_command", &runCommandText, py::arg("command"), py::arg("config_json"), py::arg("seed") = py::none(),
          py::arg("samples") = py::none(), py::arg("base_dir") = ".",
          "Runs a CLI command on a JSON config string and returns the artifact text.");
    m.def(
        "selftest", [](std::uint64_t seed) { return runSelftest(seed).dump(); }, py::arg("seed") = 0);

    m.def(
        "solve_pants",
        [](double x, double y, double z) {
            PantsTrig p = solvePants(x, y, z);
            py::dict d;
            d["t"] = p.t;
            d["tStar"] = p.tStar;
            d["ellStar"] = p.ellStar;
            d["residual"] = pantsResiduals(p).max();
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("z"));
    m.def(
        "loop_length",
        [](const std::string& loopJson, const std::string& pointJson) {
            return loopLength(loopFromJson(parseJsonText(loopJson, "loop")),
                              pointFromJson(parseJsonText(pointJson, "point")));
        },
        py::arg("loop_json"), py::arg("point_json"));
    m.def("figure_eight_length", &figureEightLength, py::arg("x"), py::arg("y"), py::arg("z"));
    m.def("okai_dual_length", &okaiDualLength, py::arg("ell_a"), py::arg("tau_a"), py::arg("L"));
    m.def("linear_conv_oracle", &linearConvOracle, py::arg("degrees"), py::arg("ell"));
    m.def("pseudo_length", &pseudoLength, py::arg("ell"));
}
