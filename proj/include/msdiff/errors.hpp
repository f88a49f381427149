#ifndef MSDIFF_ERRORS_HPP
#define MSDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msdiff {

// Thrown when an input violates a documented precondition (e.g. a signature
// that does not sum to -2). Maps to CLI exit code 2.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a computation would exceed the configured enumeration bounds.
// Distinct from "provably empty" results. Maps to CLI exit code 3.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration limits shared by the stratum enumerators. Census sizes grow
// super-exponentially in n, so we fail loudly instead of hanging.
struct EnumLimits {
    int max_marked_points = 9;
};

} // namespace msdiff

#endif
