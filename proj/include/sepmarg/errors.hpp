#pragma once

#include <stdexcept>
#include <string>

namespace sepmarg {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct NonSquareError : Error { using Error::Error; };
struct BadIndexError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct IllFormedError : Error { using Error::Error; };
struct NumericalBreakdownError : Error { using Error::Error; };
struct WrongStatusError : Error { using Error::Error; };
struct InfiniteScenarioError : Error { using Error::Error; };
struct NotChordalError : Error { using Error::Error; };
struct WrongKindError : Error { using Error::Error; };
struct NotPrivateError : Error { using Error::Error; };
struct IncompatibleEnsembleError : Error { using Error::Error; };
struct NotReflectionSymmetricError : Error { using Error::Error; };
struct AlphabetMismatchError : Error { using Error::Error; };
struct NotRunningIntersectionError : Error { using Error::Error; };
struct IncompatibleError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct UnsupportedTermError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace sepmarg
