#pragma once

#include <stdexcept>
#include <string>

namespace cubiclin {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg)
        : Error("dimension mismatch: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct ZeroToNegativePower : Error {
    ZeroToNegativePower() : Error("zero coordinate raised to a negative power") {}
};

struct EvenRootRequested : Error {
    EvenRootRequested() : Error("root index must be an odd positive integer") {}
};

struct NotInKernel : Error {
    NotInKernel() : Error("vector is not in the kernel of A") {}
};

struct NotInImage : Error {
    NotInImage() : Error("vector is not in the image of A") {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& msg)
        : Error("precondition violated: " + msg) {}
};

struct ConstraintViolated : Error {
    explicit ConstraintViolated(const std::string& which)
        : Error("constraint violated: " + which), constraint(which) {}
    std::string constraint;
};

struct SamplingExhausted : Error {
    explicit SamplingExhausted(const std::string& msg)
        : Error("sampling exhausted: " + msg) {}
};

struct NonConvergent : Error {
    explicit NonConvergent(const std::string& msg)
        : Error("non-convergent: " + msg) {}
};

}  // namespace cubiclin
