#ifndef AGGSTAT_ERRORS_HPP
#define AGGSTAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aggstat {

/// Invalid potential parameters (positivity or integrability constraints).
struct InadmissibleParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The requested radial integral does not converge.
struct DivergentIntegral : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid resolution below the supported minimum.
struct BadResolution : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation undefined on a zero-mass profile.
struct ZeroMass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Potential dimension and grid dimension differ.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two objects live on different radial grids.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Angular quadrature failed the doubling Cauchy test at the node cap.
struct QuadratureUnderResolved : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver hit its iteration cap before meeting tolerance.
struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& what, int iterations_done)
        : std::runtime_error(what), iterations(iterations_done) {}
    int iterations;
};

/// Fixed-point iterate collapsed to (numerically) zero mass.
struct DegenerateProfile : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested quantity is undefined for the given exponent m.
struct NotApplicable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bisection could not bracket the target eigenvalue below the radius cap.
struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cartesian oracle resolution above the hard cap.
struct ResolutionTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace aggstat

#endif
