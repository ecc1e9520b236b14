#pragma once

#include <stdexcept>
#include <string>

namespace genformal {

// Input/contract violations throw Error; verification *failures* are returned
// as data (Check objects with witnesses), never thrown.
enum class ErrorKind {
  ChartMismatch,
  UnknownVariable,
  InconsistentConjugates,
  NonconformableShapes,
  NotSkew,
  NotSquareRootOfMinusOne,
  NotOrthogonal,
  SingularOmega,
  NotGeneralizedComplex,
  PolynomialEntries,
  NotCommuting,
  NotGeneralizedComplexSubspace,
  NotPositiveDefinite,
  NotMaximalIsotropic,
  NotGraded,
  ResidualOutsideAdjacentDegrees,
  NotClosed,
  NotInvariant,
  NotIsotropic,
  MalformedFamily,
  ResidualOutsideCorners,
  NotOnLevelSet,
  NotFree,
  HypothesisNotVerified,
  InvalidWeights,
  DegreeMismatch,
  InvariantViolation,
  NotChainMap,
  ParseError,
  SceneError,
  BadArgument,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::InconsistentConjugates: return "InconsistentConjugates";
    case ErrorKind::NonconformableShapes: return "NonconformableShapes";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::NotSquareRootOfMinusOne: return "NotSquareRootOfMinusOne";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::SingularOmega: return "SingularOmega";
    case ErrorKind::NotGeneralizedComplex: return "NotGeneralizedComplex";
    case ErrorKind::PolynomialEntries: return "PolynomialEntries";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotGeneralizedComplexSubspace:
      return "NotGeneralizedComplexSubspace";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotMaximalIsotropic: return "NotMaximalIsotropic";
    case ErrorKind::NotGraded: return "NotGraded";
    case ErrorKind::ResidualOutsideAdjacentDegrees:
      return "ResidualOutsideAdjacentDegrees";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::MalformedFamily: return "MalformedFamily";
    case ErrorKind::ResidualOutsideCorners: return "ResidualOutsideCorners";
    case ErrorKind::NotOnLevelSet: return "NotOnLevelSet";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::HypothesisNotVerified: return "HypothesisNotVerified";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SceneError: return "SceneError";
    case ErrorKind::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace genformal
