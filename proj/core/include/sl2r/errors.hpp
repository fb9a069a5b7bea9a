#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sl2r {

// Base class of all library errors. code() is the stable machine-readable
// identifier the CLI puts into its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct BoundaryPointError : Error {
    explicit BoundaryPointError(const std::string& w) : Error("BoundaryPoint", w) {}
};

struct WrongModelError : Error {
    explicit WrongModelError(const std::string& w) : Error("WrongModel", w) {}
};

struct DeterminantError : Error {
    explicit DeterminantError(const std::string& w) : Error("DeterminantError", w) {}
};

struct IdealPoleError : Error {
    explicit IdealPoleError(const std::string& w) : Error("IdealPole", w) {}
};

struct NonpositiveRadiusError : Error {
    explicit NonpositiveRadiusError(const std::string& w) : Error("NonpositiveRadius", w) {}
};

struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& w) : Error("NoConvergence", w) {}
};

struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& w) : Error("NonFinite", w) {}
};

struct NoBracketError : Error {
    explicit NoBracketError(const std::string& w) : Error("NoBracket", w) {}
};

struct BadParameterError : Error {
    explicit BadParameterError(const std::string& w) : Error("BadParameter", w) {}
};

struct BadBoundaryError : Error {
    explicit BadBoundaryError(const std::string& w) : Error("BadBoundary", w) {}
};

// Carries the residual-norm history of the failed Newton iteration.
struct NewtonDivergedError : Error {
    NewtonDivergedError(const std::string& w, std::vector<double> trace)
        : Error("NewtonDiverged", w), residual_trace(std::move(trace)) {}
    std::vector<double> residual_trace;
};

struct TooManyVerticesError : Error {
    explicit TooManyVerticesError(const std::string& w) : Error("TooManyVertices", w) {}
};

struct OverlappingHorocyclesError : Error {
    explicit OverlappingHorocyclesError(const std::string& w) : Error("OverlappingHorocycles", w) {}
};

struct InvalidCurveError : Error {
    explicit InvalidCurveError(const std::string& w) : Error("InvalidCurve", w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

} // namespace sl2r
