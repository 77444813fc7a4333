#include <pybind11/pybind11.h>

#include "supalg/jobs.hpp"

namespace py = pybind11;
using namespace supalg;

namespace {

// Same dispatcher as the CLI; payloads travel as JSON strings.
std::pair<int, std::string> run(const std::string& verb, const std::string& action,
                                const std::string& variant, const std::string& params, int order,
                                std::uint64_t seed, const std::string& input_json) {
    JobSpec spec;
    spec.verb = verb;
    spec.action = action;
    spec.variant = variant;
    spec.params = params;
    spec.order = order;
    spec.seed = seed;
    if (!input_json.empty()) {
        spec.input_bytes = input_json;
        try {
            spec.input = Json::parse(input_json);
        } catch (const nlohmann::json::exception& e) {
            Json rep;
            rep["tool"] = "supalg";
            rep["version"] = kToolVersion;
            rep["error"] = std::string("malformed JSON: ") + e.what();
            return {2, rep.dump(2)};
        }
    }
    JobResult r = run_job(spec);
    return {r.exit_code, r.report.dump(2)};
}

} // namespace

PYBIND11_MODULE(_supalg, m) {
    m.doc() = "exact super linear algebra toolkit";
    m.attr("__version__") = kToolVersion;
    m.def("run", &run, py::arg("verb"), py::arg("action") = "", py::arg("variant") = "",
          py::arg("params") = "", py::arg("order") = -1, py::arg("seed") = 2024,
          py::arg("input_json") = "",
          "Run one job; returns (exit_code, report_json). Verbs mirror the CLI.");
    m.def("usage", &usage_text);
}
