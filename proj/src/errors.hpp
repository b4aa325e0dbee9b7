#pragma once

#include <stdexcept>

namespace lodm {

/// The invertibility condition fails: a is outside the stability region, so
/// the iterated link does not forget its initialization.
struct NotInvertibleError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The parameters are identifiable; no equivalence curve exists.
struct NoCurveError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace lodm
