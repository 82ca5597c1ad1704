#pragma once

#include <stdexcept>
#include <string>

namespace igt {

// Domain-level failure (bad input data, infeasible request, broken invariant).
// CLI maps these to exit code 1; usage problems are handled by the parser.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace igt
