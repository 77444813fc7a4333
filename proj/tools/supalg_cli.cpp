#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "supalg/jobs.hpp"

using namespace supalg;

int main(int argc, char** argv) {
    CLI::App app{"exact super linear algebra toolkit"};
    app.allow_extras();

    std::string in_path, out_path, variant, params;
    int order = -1;
    std::uint64_t seed = 2024;
    app.add_option("--in", in_path, "input JSON file");
    app.add_option("--out", out_path, "output JSON file (default: stdout)");
    app.add_option("--seed", seed, "seed for randomized harnesses");
    app.add_option("--order", order, "series truncation order");
    app.add_option("--variant", variant, "operation variant");
    app.add_option("--params", params, "parameter string, e.g. \"gl(2|1)\"");

    CLI11_PARSE(app, argc, argv);

    std::vector<std::string> positional = app.remaining();
    if (positional.empty()) {
        std::cerr << usage_text();
        return 2;
    }

    JobSpec spec;
    spec.verb = positional[0];
    if (positional.size() > 1) spec.action = positional[1];
    if (positional.size() > 2) {
        std::cerr << "unexpected positional argument: " << positional[2] << "\n" << usage_text();
        return 2;
    }
    spec.variant = variant;
    spec.params = params;
    spec.order = order;
    spec.seed = seed;

    if (!in_path.empty()) {
        std::ifstream in(in_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open input file: " << in_path << "\n";
            return 2;
        }
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        spec.input_bytes = bytes;
        try {
            spec.input = Json::parse(bytes);
        } catch (const nlohmann::json::exception& e) {
            Json rep;
            rep["tool"] = "supalg";
            rep["version"] = kToolVersion;
            rep["error"] = std::string("malformed JSON: ") + e.what();
            std::cout << rep.dump(2) << "\n";
            return 2;
        }
    }

    JobResult result = run_job(spec);
    std::string text = result.report.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return result.exit_code;
}
