#pragma once

#include <stdexcept>
#include <string>

namespace cnp {

// Invalid caller-supplied data (bad zeros, non-unit vectors, malformed
// problems). Maps to CLI exit code 3.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Two zeros closer than the matching tolerance but not identical. The
// caller must decide whether they are one zero or two.
class AmbiguousZeroMatch : public InvalidParameter {
public:
    explicit AmbiguousZeroMatch(const std::string& what) : InvalidParameter(what) {}
};

// Grammian eigenvalue below the linear-independence floor (nodes too close).
class NearDependentBasis : public std::runtime_error {
public:
    explicit NearDependentBasis(const std::string& what) : std::runtime_error(what) {}
};

// Operation outside the supported regime (e.g. exact quotient norms need a
// node at a zero of the constraint).
class UnsupportedCase : public InvalidParameter {
public:
    explicit UnsupportedCase(const std::string& what) : InvalidParameter(what) {}
};

// Numerically ill-conditioned instance where a reliable answer cannot be
// produced (tiny separations, borderline ranks).
class ConditioningError : public std::runtime_error {
public:
    explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

// Targets contradict a structural dependence between kernel functions; no
// interpolant exists regardless of norm.
class InfeasibleByStructure : public std::runtime_error {
public:
    explicit InfeasibleByStructure(const std::string& what) : std::runtime_error(what) {}
};

// A cross-checked internal identity failed. Indicates a bug, never an input
// problem. Maps to CLI exit code 4.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

}  // namespace cnp
