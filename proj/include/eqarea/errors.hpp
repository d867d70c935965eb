#ifndef EQAREA_ERRORS_HPP
#define EQAREA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqarea {

/// Base class for all solver-side failures.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Scenario/profile description is malformed (overlaps, gaps, bad fields).
struct SpecError : SolverError {
    explicit SpecError(const std::string& msg) : SolverError(msg) {}
};

/// A profile callback returned a non-finite value at a sample point.
struct NonFiniteError : SpecError {
    explicit NonFiniteError(const std::string& msg) : SpecError(msg) {}
};

/// Jump with |uL - uR| below the degeneracy threshold.
struct DegenerateJump : SolverError {
    explicit DegenerateJump(const std::string& msg) : SolverError(msg) {}
};

/// Root-finding bracket does not contain the requested value.
struct BracketError : SolverError {
    explicit BracketError(const std::string& msg) : SolverError(msg) {}
};

/// Adaptive quadrature hit its subdivision limit before reaching tolerance.
struct QuadratureError : SolverError {
    explicit QuadratureError(const std::string& msg) : SolverError(msg) {}
};

/// Velocity queried exactly at a junction between smooth pieces or at a jump.
struct JumpParameterError : SolverError {
    explicit JumpParameterError(const std::string& msg) : SolverError(msg) {}
};

/// Curve parameter outside the evaluable range.
struct OutOfRange : SolverError {
    explicit OutOfRange(const std::string& msg) : SolverError(msg) {}
};

/// A vertical line crosses an overturned region a number of times other
/// than three; the generalized equal-area machinery must be used instead.
struct NotSCurve : SolverError {
    explicit NotSCurve(const std::string& msg) : SolverError(msg) {}
};

/// Signed area has no sign change over the fold (malformed region).
struct NoRoot : SolverError {
    explicit NoRoot(const std::string& msg) : SolverError(msg) {}
};

/// Equal-area projection failed its a-posteriori single-valuedness check.
struct ProjectionInconsistent : SolverError {
    explicit ProjectionInconsistent(const std::string& msg) : SolverError(msg) {}
};

/// Shock polynomial has no root inside the flowed shock-line bracket.
struct NoRootInBracket : SolverError {
    explicit NoRootInBracket(const std::string& msg) : SolverError(msg) {}
};

/// Shock polynomial has more than one root in the bracket (contaminated).
struct MultipleRoots : SolverError {
    explicit MultipleRoots(const std::string& msg) : SolverError(msg) {}
};

/// Oracle cannot handle the supplied data (e.g. up-jumps in front tracking).
struct UnsupportedData : SolverError {
    explicit UnsupportedData(const std::string& msg) : SolverError(msg) {}
};

/// CFL number outside the stable range for the reference scheme.
struct CFLViolation : SolverError {
    explicit CFLViolation(const std::string& msg) : SolverError(msg) {}
};

/// No applicable oracle for the requested comparison.
struct NoOracle : SolverError {
    explicit NoOracle(const std::string& msg) : SolverError(msg) {}
};

/// Scenario configuration file errors (parse failures, bad fields).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eqarea

#endif
