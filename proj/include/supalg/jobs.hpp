#pragma once

#include <optional>

#include "supalg/json_io.hpp"

namespace supalg {

inline constexpr const char* kToolVersion = "0.1.0";

// One CLI invocation, already parsed. The same entry point backs the command
// line tool and the Python bindings, so outputs stay byte-identical.
struct JobSpec {
    std::string verb;    // algebra | jordan | kan | roundtrip | ce | ...
    std::string action;  // build | check (for algebra and jordan)
    std::string variant; // det | ber | qet | quadric | from-graded
    std::string params;
    int order = -1;
    std::uint64_t seed = 2024;
    std::optional<Json> input;
    std::string input_bytes;
};

struct JobResult {
    int exit_code = 0; // 0 ok, 1 check failed, 2 invalid input, 3 unsupported
    Json report;
};

// Runs the job; never throws (errors are mapped to exit codes + reports).
JobResult run_job(const JobSpec& spec);

std::string usage_text();

} // namespace supalg
