#pragma once

#include <stdexcept>
#include <string>

namespace qshuffle {

// Base class for all mathematical failures raised by this library.
// `hard` marks conditions where the mathematics disagreed with itself
// (oracle mismatches and the like); the CLI maps those to exit code 3.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& msg, bool hard_failure = false)
        : std::runtime_error(msg), hard(hard_failure) {}
    bool hard;
};

struct SubsetTooSmall : MathError {
    explicit SubsetTooSmall(const std::string& m) : MathError(m) {}
};
struct MissingVariable : MathError {
    explicit MissingVariable(const std::string& m) : MathError(m) {}
};
struct ZeroAssignment : MathError {
    explicit ZeroAssignment(const std::string& m) : MathError(m) {}
};
struct IndexOutOfRange : MathError {
    explicit IndexOutOfRange(const std::string& m) : MathError(m) {}
};
struct HasConstantTerm : MathError {
    explicit HasConstantTerm(const std::string& m) : MathError(m) {}
};
struct MissingDiagonalParameter : MathError {
    explicit MissingDiagonalParameter(const std::string& m) : MathError(m) {}
};
struct RepeatedIndex : MathError {
    explicit RepeatedIndex(const std::string& m) : MathError(m) {}
};
struct RangeError : MathError {
    explicit RangeError(const std::string& m) : MathError(m) {}
};
struct SingularMatrix : MathError {
    explicit SingularMatrix(const std::string& m) : MathError(m) {}
};
struct DimensionMismatch : MathError {
    explicit DimensionMismatch(const std::string& m) : MathError(m) {}
};
struct NotAnEdge : MathError {
    explicit NotAnEdge(const std::string& m) : MathError(m) {}
};
struct InconsistentConstraints : MathError {
    explicit InconsistentConstraints(const std::string& m) : MathError(m) {}
};
struct ExhaustedRetries : MathError {
    explicit ExhaustedRetries(const std::string& m) : MathError(m) {}
};
struct NoFreePair : MathError {
    explicit NoFreePair(const std::string& m) : MathError(m) {}
};
struct ProvisoViolated : MathError {
    explicit ProvisoViolated(const std::string& m) : MathError(m) {}
};
struct SizeTooLarge : MathError {
    explicit SizeTooLarge(const std::string& m) : MathError(m) {}
};

// Hard failures: the implementation caught itself (or the paper) lying.
struct NonMonomialResidual : MathError {
    explicit NonMonomialResidual(const std::string& m) : MathError(m, true) {}
};
struct FormDoesNotDescend : MathError {
    explicit FormDoesNotDescend(const std::string& m) : MathError(m, true) {}
};
struct OracleMismatch : MathError {
    explicit OracleMismatch(const std::string& m) : MathError(m, true) {}
};
struct CertificationFailure : MathError {
    explicit CertificationFailure(const std::string& m) : MathError(m, true) {}
};

} // namespace qshuffle
