#ifndef WARPGEO_ERRORS_HPP
#define WARPGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace warpgeo {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownKind : Error {
  using Error::Error;
};
struct BadArity : Error {
  using Error::Error;
};
struct NonpositiveParameter : Error {
  using Error::Error;
};
struct EvaluationFailure : Error {
  using Error::Error;
};
struct StepTooLarge : Error {
  using Error::Error;
};
struct PoleSingularity : Error {
  using Error::Error;
};
struct QuadratureNonConvergence : Error {
  using Error::Error;
};
struct TailDivergence : Error {
  using Error::Error;
};
struct VolumeTooLarge : Error {
  using Error::Error;
};
struct TooFewSamples : Error {
  using Error::Error;
};
struct OverflowAtWeight : Error {
  using Error::Error;
};
struct NonConvergedBisection : Error {
  using Error::Error;
};
struct HypothesisNotMet : Error {
  using Error::Error;
};
struct BracketFailure : Error {
  using Error::Error;
};
struct NonPositiveU : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ConfigParse : Error {
  using Error::Error;
};
struct IoFailure : Error {
  using Error::Error;
};

}  // namespace warpgeo

#endif
