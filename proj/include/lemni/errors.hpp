#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lemni {

// Error categories map onto the CLI exit codes:
//   InvalidParams   -> 2 (bad input before any computation)
//   EvaluationError -> 3 (failure at a specific point, carries the point)
//   IoError         -> 4 (unwritable path etc.)
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct EvaluationError : Error {
    std::complex<double> where{0.0, 0.0};
    bool has_where = false;

    explicit EvaluationError(const std::string &msg) : Error(msg) {}
    EvaluationError(const std::string &msg, std::complex<double> z)
        : Error(msg), where(z), has_where(true) {}
};

struct IoError : Error {
    using Error::Error;
};

} // namespace lemni
