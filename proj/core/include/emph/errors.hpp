#pragma once

#include <stdexcept>
#include <string>

namespace emph {

// Bad data or bad arguments supplied by the caller. CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A value outside the mathematical domain of an operation (a non-positive
// direction component, an even homology count per circle, ...). A kind of
// caller mistake, so the CLI also maps it to exit code 1.
class domain_error : public input_error {
public:
    explicit domain_error(const std::string& what) : input_error(what) {}
};

// Broken internal invariant (shape drift between cached stages, stale
// origins, ...). CLI maps this to exit code 2.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace emph
