#pragma once

#include <stdexcept>
#include <string>

namespace circumflow {

/// Caller-supplied data violates a documented precondition.
/// The CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic left the domain where the maps are defined.
/// The CLI maps this to exit code 3.
struct NumericFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Chord root-finding with the vertex within tolerance of the centroid.
struct DegenerateRay : NumericFault {
  using NumericFault::NumericFault;
};

/// A squared centroid-to-vertex distance g_i fell to or below tolerance.
struct NonPositiveG : NumericFault {
  using NumericFault::NumericFault;
};

/// The power p0 = 1 - OG^2 fell to or below tolerance (centroid on the
/// sphere); the parameter map divides by p0-derived quantities.
struct VanishingPower : NumericFault {
  using NumericFault::NumericFault;
};

/// A map-specific denominator or discriminant left its valid range.
struct DomainError : NumericFault {
  using NumericFault::NumericFault;
};

/// Two independent routes to the same quantity disagreed beyond the
/// allowed residual; signals loss of precision or an invalid state.
struct ConsistencyFault : NumericFault {
  using NumericFault::NumericFault;
};

/// Supplied triangle parameters do not satisfy u = 4t - s^2, the unit
/// circumradius constraint.
struct NotUnitCircumradius : InputError {
  using InputError::InputError;
};

/// Limit predictor for the planar regime received non-planar input.
struct NonPlanarInput : InputError {
  using InputError::InputError;
};

/// Limit predictor for the tetrahedron regime received planar input.
struct PlanarInput : InputError {
  using InputError::InputError;
};

/// Convergence-order estimation needs at least four usable points.
struct InsufficientData : NumericFault {
  using NumericFault::NumericFault;
};

/// Too few sequence points exceed the underflow floor to fit a tail.
struct UnderflowTail : NumericFault {
  using NumericFault::NumericFault;
};

/// Random generation failed to produce an admissible configuration
/// within the attempt budget.
struct RejectionExhausted : InputError {
  using InputError::InputError;
};

/// Wraps a fault raised while advancing an orbit, tagging the step.
struct OrbitError : NumericFault {
  int step;
  OrbitError(int step_, const std::string& what_)
      : NumericFault("orbit step " + std::to_string(step_) + ": " + what_),
        step(step_) {}
};

}  // namespace circumflow
