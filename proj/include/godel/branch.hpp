#ifndef GODEL_BRANCH_HPP
#define GODEL_BRANCH_HPP

#include <cmath>

#include "godel/errors.hpp"

namespace godel {

/// Continuous, strictly increasing lift of s -> arctan(beta * tan s).
///
/// Agrees with arctan(beta tan s) on (-pi/2, pi/2), takes the value
/// pi/2 + k pi at s = pi/2 + k pi, and satisfies f(s + k pi) = f(s) + k pi.
/// Evaluated as s plus the bounded periodic correction
///   atan2((beta - 1) sin 2s, (1 + beta) + (1 - beta) cos 2s),
/// whose denominator is positive for beta > 0, so no branch index is needed.
template <typename Scalar>
Scalar unwrapped_atan_tan(Scalar beta, Scalar s) {
  using std::atan2;
  using std::cos;
  using std::sin;
  if (!(beta > Scalar(0))) throw DomainError("unwrapped_atan_tan: beta must be positive");
  const Scalar two_s = s + s;
  return s + atan2((beta - Scalar(1)) * sin(two_s),
                   (Scalar(1) + beta) + (Scalar(1) - beta) * cos(two_s));
}

/// unwrapped_atan_tan(beta, s) - s. Bounded by pi/2 and 2pi-periodic in 2s.
template <typename Scalar>
Scalar atan_tan_offset(Scalar beta, Scalar s) {
  using std::atan2;
  using std::cos;
  using std::sin;
  const Scalar two_s = s + s;
  return atan2((beta - Scalar(1)) * sin(two_s),
               (Scalar(1) + beta) + (Scalar(1) - beta) * cos(two_s));
}

}  // namespace godel

#endif  // GODEL_BRANCH_HPP
