#pragma once

#include <stdexcept>
#include <string>

namespace szeta {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& w = "matrix has zero determinant") : Error(w) {}
};

struct NotLoxodromic : Error {
    explicit NotLoxodromic(const std::string& w = "map is not loxodromic") : Error(w) {}
};

struct DegenerateFixedPoints : Error {
    explicit DegenerateFixedPoints(const std::string& w = "fixed points coincide") : Error(w) {}
};

struct FixesInfinity : Error {
    explicit FixesInfinity(const std::string& w = "map fixes infinity (c = 0)") : Error(w) {}
};

struct BadLetter : Error {
    explicit BadLetter(const std::string& w = "letter out of range") : Error(w) {}
};

struct NotCyclicallyReduced : Error {
    explicit NotCyclicallyReduced(const std::string& w = "word is not cyclically reduced") : Error(w) {}
};

struct CirclesOverlap : Error {
    explicit CirclesOverlap(const std::string& w = "fundamental disks overlap") : Error(w) {}
};

struct NoValidRadius : Error {
    explicit NoValidRadius(const std::string& w = "no radius yields disjoint disks") : Error(w) {}
};

struct CirclesRequired : Error {
    explicit CirclesRequired(const std::string& w = "operation requires valid fundamental circles") : Error(w) {}
};

struct GenusTooSmall : Error {
    explicit GenusTooSmall(const std::string& w = "operation requires genus >= 2") : Error(w) {}
};

struct PoleTooClose : Error {
    explicit PoleTooClose(const std::string& w = "evaluation point too close to a pole") : Error(w) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& w = "quadrature did not converge") : Error(w) {}
};

struct SingularPairing : Error {
    explicit SingularPairing(const std::string& w = "pairing matrix is numerically singular") : Error(w) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w = "coefficient matrix has wrong dimensions") : Error(w) {}
};

struct NotDivisible : Error {
    explicit NotDivisible(const std::string& w = "exact division failed") : Error(w) {}
};

struct FitFailed : Error {
    explicit FitFailed(const std::string& w = "leading-order fit failed") : Error(w) {}
};

struct BadSpec : Error {
    explicit BadSpec(const std::string& w = "invalid group specification") : Error(w) {}
};

}  // namespace szeta
