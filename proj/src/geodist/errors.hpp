#ifndef GEODIST_ERRORS_HPP
#define GEODIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geodist {

// Error taxonomy mirrored by the C API status codes.

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value outside the mathematical domain of an operation (e.g. log of a
// non-positive measure entry).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration cap was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct singular_error : std::runtime_error {
    explicit singular_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace geodist

#endif
