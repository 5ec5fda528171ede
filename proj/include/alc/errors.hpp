#ifndef ALC_ERRORS_HPP
#define ALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alc {

// Malformed input: bad JSON shape, unknown fields, non-canonical payloads.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// A stated operation precondition does not hold (backend mismatch,
// W1 not contained in W2, chain requested for a closed set, ...).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A desk-scale size guard was exceeded (poset too large, group order too big).
class GuardError : public PreconditionError {
public:
    explicit GuardError(const std::string& what) : PreconditionError(what) {}
};

}  // namespace alc

#endif
