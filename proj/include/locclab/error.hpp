#pragma once

#include <stdexcept>
#include <string>

namespace locc {

// Bad input: shapes, non-orthogonal ensembles, malformed files.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative routine hit its cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace locc
