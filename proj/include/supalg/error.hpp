#pragma once

#include <stdexcept>
#include <string>

namespace supalg {

// Error taxonomy mirrors the CLI exit codes: input errors (bad data,
// degenerate inputs) vs. unsupported parameters (out of implemented range).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace supalg
