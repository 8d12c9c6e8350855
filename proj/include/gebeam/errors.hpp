#pragma once

#include <stdexcept>
#include <string>

namespace gebeam {

/// Invalid configuration or precondition violation (CLI exit code 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values or a diverged computation (CLI exit code 1).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gebeam
