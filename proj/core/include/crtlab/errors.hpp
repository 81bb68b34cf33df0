#pragma once

#include <stdexcept>
#include <string>

namespace crtlab {

// Argument outside the domain of an operation (negative time, alpha out of range, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed input data: bad weights, broken permutations, invalid JSON documents.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Two candidates tie within tolerance; callers are expected to resample.
class AmbiguityError : public std::runtime_error {
public:
    explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on the inputs failed, e.g. a mark colliding with a jump time.
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

[[noreturn]] void throw_domain(const std::string& what);
[[noreturn]] void throw_validation(const std::string& what);

}  // namespace crtlab
