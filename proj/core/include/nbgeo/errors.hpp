#pragma once

#include <stdexcept>
#include <string>

namespace nbgeo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// First fundamental form (or induced bundle metric) is numerically singular;
/// the parametrization degenerates at the requested point.
struct DegenerateMetric : Error {
    using Error::Error;
};

/// |a - b| below the umbilic threshold: principal directions and omega_1^2
/// are ill-conditioned at this point.
struct UmbilicPoint : Error {
    using Error::Error;
};

struct UnknownSurface : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

/// f3/g3 requested without the e1a+e1b = e2a+e2b = 0 constraint.
struct ConstraintViolated : Error {
    using Error::Error;
};

/// Vandermonde system for coefficient extraction too ill-conditioned.
struct IllConditioned : Error {
    using Error::Error;
};

/// |H| below eps_H: the Maslovian condition is vacuous at this point.
struct VanishingH : Error {
    using Error::Error;
};

struct AllSamplesExcluded : Error {
    using Error::Error;
};

struct InsufficientSamples : Error {
    using Error::Error;
};

} // namespace nbgeo
