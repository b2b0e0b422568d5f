#pragma once

#include <stdexcept>
#include <string>

namespace rnprop {

// Base class for all library errors. Subclasses name the failure mode so
// callers and tests can catch them individually.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExtremalOrNaked : Error {
    using Error::Error;
};
struct OutsideRegion : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct GridTooCoarse : Error {
    using Error::Error;
};
struct EigensolverFailure : Error {
    using Error::Error;
};
struct AtHorizon : Error {
    using Error::Error;
};
struct SupportTouchesHorizon : Error {
    using Error::Error;
};
struct OnThresholds : Error {
    using Error::Error;
};
struct StartTooSmall : Error {
    using Error::Error;
};
struct NonConvergent : Error {
    using Error::Error;
};
struct OmegaZero : Error {
    using Error::Error;
};
struct AmplitudeExtractionFailed : Error {
    using Error::Error;
};
struct InadmissibleBranch : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct ComplexOmega : Error {
    using Error::Error;
};
struct SingularBasis : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct SingularGram : Error {
    using Error::Error;
};
struct OnDiagonal : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct GuardBand : Error {
    using Error::Error;
};
struct QuadratureUnderResolved : Error {
    using Error::Error;
};
struct CFLViolation : Error {
    using Error::Error;
};
struct SupportTooWide : Error {
    using Error::Error;
};
struct NoOverlap : Error {
    using Error::Error;
};
struct ConfigInvalid : Error {
    using Error::Error;
};
struct ComputationFailed : Error {
    using Error::Error;
};

}  // namespace rnprop
