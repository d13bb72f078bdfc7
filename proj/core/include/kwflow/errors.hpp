#ifndef KWFLOW_ERRORS_HPP
#define KWFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kwflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Field contains NaN/Inf where finite values are required. */
struct InvalidFieldError : Error {
  using Error::Error;
};

/** Two fields on different grids were combined. */
struct GridMismatchError : Error {
  using Error::Error;
};

/** Right-hand side of a periodic Poisson solve has nonzero mean. */
struct SolvabilityError : Error {
  using Error::Error;
};

/** An exponential left the representable range. */
struct RangeError : Error {
  using Error::Error;
};

/** Weighted mass vanished (h e^u integrates to zero). */
struct DegenerateWeightError : Error {
  using Error::Error;
};

/** A local construction (annulus, rescaling window) left its chart. */
struct GeometryError : Error {
  using Error::Error;
};

/** Time step underflowed during adaptive stepping. */
struct StepFailure : Error {
  using Error::Error;
};

}  // namespace kwflow

#endif
