#pragma once

#include <stdexcept>
#include <string>

namespace wemix {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

// Covariance with smallest eigenvalue <= 1e-300 * largest.
struct SingularCovariance : Error {
    using Error::Error;
};

// chi2_pdf at t=0 with p=1 (density diverges).
struct BoundarySingularity : Error {
    using Error::Error;
};

struct EmptySample : Error {
    using Error::Error;
};

struct InvalidModel : Error {
    using Error::Error;
};

// A mixture component lost its support during fitting; the candidate is
// discarded by the multi-start driver.
struct DegenerateComponent : Error {
    using Error::Error;
};

struct AllRootsDegenerate : Error {
    using Error::Error;
};

struct TooFewRows : Error {
    using Error::Error;
};

struct KMismatch : Error {
    using Error::Error;
};

struct FewerThanTwoPoints : Error {
    using Error::Error;
};

struct RejectionBudgetExceeded : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace wemix
