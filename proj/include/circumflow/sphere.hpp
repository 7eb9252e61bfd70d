#pragma once

#include "circumflow/linalg.hpp"

namespace circumflow {

/// Second intersection of the line through g and a with the unit sphere,
/// given a already on the sphere.
///
/// On the parametrization p = a + t*(g - a) the quadratic |p|^2 = 1 has
/// roots t = 0 and t = 2<a, a-g> / |a-g|^2. Taking the nonzero root in
/// this Vieta (product-of-roots) form avoids the subtractive branch of
/// the quadratic formula, which cancels catastrophically as the second
/// root approaches 0.
inline Vec second_sphere_intersection(const Vec& a, const Vec& g,
                                      const Real& tolerance) {
  Vec ag = sub(a, g);
  Real den = norm2(ag);
  if (den < tolerance * tolerance) {
    throw DegenerateRay("vertex within tolerance of the centroid");
  }
  Real t = 2 * dot(a, ag) / den;
  // p = a + t*(g - a) = a - t*(a - g)
  return axpy(a, -t, ag);
}

}  // namespace circumflow
