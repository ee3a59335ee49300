#pragma once

#include <stdexcept>
#include <string>

namespace rolemine {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// configuration / input
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct MissingArtifactError : Error { using Error::Error; };

// ingestion
struct AuthError : Error { using Error::Error; };
struct NotFoundError : Error { using Error::Error; };
struct PartialFetchError : Error { using Error::Error; };
struct OutOfWindowError : Error { using Error::Error; };

// numerics
struct DegenerateMatrixError : Error { using Error::Error; };
struct NoFactorsRetainedError : Error { using Error::Error; };
struct SingularCorrelationError : Error { using Error::Error; };

// clustering / labeling
struct InvalidCandidateRangeError : Error { using Error::Error; };
struct LabelRuleConflictError : Error { using Error::Error; };

// dynamics
struct MissingCentroidError : Error { using Error::Error; };
struct EmptyPopulationError : Error { using Error::Error; };

} // namespace rolemine
