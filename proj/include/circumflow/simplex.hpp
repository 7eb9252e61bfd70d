#pragma once

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "circumflow/linalg.hpp"

namespace circumflow {

/// The six squared edge lengths of a tetrahedron or cyclic quadrilateral
/// inscribed in the unit sphere. Vertex labels A,B,C,D are fixed once:
/// d12 = AB^2, d13 = AC^2, d14 = AD^2, d23 = BC^2, d24 = BD^2, d34 = CD^2.
/// Opposite edge pairs are (d12,d34), (d13,d24), (d14,d23).
struct EdgeParams {
  Real d12, d13, d14, d23, d24, d34;

  std::array<Real, 6> as_array() const { return {d12, d13, d14, d23, d24, d34}; }

  static EdgeParams from_array(const std::array<Real, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
};

/// Squared centroid-to-vertex distances g_i, the power-derived quantity
/// p0 = 1 - OG^2 = mean of the g_i, and og2 = OG^2 = 1 - p0.
struct CentroidData {
  Real g1, g2, g3, g4;
  Real p0;
  Real og2;
};

/// Symmetric-function parameters of a triangle inscribed in the unit
/// circle: s = a^2+b^2+c^2, t = a^2b^2+b^2c^2+c^2a^2, u = a^2b^2c^2,
/// tied together by u = 4t - s^2 (equivalently u = 16 * area^2 at
/// circumradius 1).
struct TriangleParams {
  Real s, t, u;
};

enum class ShapeClass { Isosceles, Rectangle, Generic };

/// 16 * squared area of a triangle with squared sides x, y, z
/// (the Heron polynomial 2(xy+yz+zx) - x^2 - y^2 - z^2).
inline Real heron16(const Real& x, const Real& y, const Real& z) {
  return 2 * (x * y + y * z + z * x) - x * x - y * y - z * z;
}

/// Ordered vertices on the unit sphere centered at the origin. A
/// d-simplex carries d+1 vertices; the cyclic-quadrilateral regime
/// carries 4 planar vertices with dim = 2.
class VertexConfig {
 public:
  VertexConfig(int dim, std::vector<Vec> vertices, const Real& tolerance)
      : dim_(dim), vertices_(std::move(vertices)) {
    if (dim_ < 2) throw InputError("dimension must be at least 2");
    const std::size_t n = vertices_.size();
    if (n != static_cast<std::size_t>(dim_) + 1 && !(dim_ == 2 && n == 4)) {
      throw InputError("vertex count must be dim+1, or 4 when dim = 2");
    }
    bool separated = false;
    for (const Vec& v : vertices_) {
      if (v.size() != static_cast<std::size_t>(dim_)) {
        throw InputError("vertex dimension mismatch");
      }
      if (abs(norm2(v) - 1) > 3 * tolerance) {
        throw InputError("vertex not on the unit sphere");
      }
    }
    for (std::size_t i = 0; i + 1 < n && !separated; ++i) {
      for (std::size_t j = i + 1; j < n && !separated; ++j) {
        if (norm2(sub(vertices_[i], vertices_[j])) > tolerance) separated = true;
      }
    }
    if (!separated) throw InputError("all vertices coincide");
  }

  /// Builds the cyclic-quadrilateral configuration from 4 unit-circle
  /// points, sorting them by polar angle so the labeling is convex-cyclic
  /// and (d13, d24) are the diagonals.
  static VertexConfig quadrilateral(std::vector<Vec> pts, const Real& tolerance) {
    if (pts.size() != 4) throw InputError("quadrilateral needs 4 points");
    std::sort(pts.begin(), pts.end(), [](const Vec& p, const Vec& q) {
      return atan2(p[1], p[0]) < atan2(q[1], q[0]);
    });
    return VertexConfig(2, std::move(pts), tolerance);
  }

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  Vec centroid() const { return circumflow::centroid(vertices_); }

 private:
  int dim_;
  std::vector<Vec> vertices_;
};

/// Squared pairwise distances of a 4-vertex configuration in the fixed
/// labeling convention.
inline EdgeParams params_from_vertices(const VertexConfig& c) {
  const auto& v = c.vertices();
  if (v.size() != 4 || (c.dim() != 3 && c.dim() != 2)) {
    throw InputError("edge parameters need 4 vertices in dimension 2 or 3");
  }
  auto d2 = [&](int i, int j) { return norm2(sub(v[i], v[j])); };
  return {d2(0, 1), d2(0, 2), d2(0, 3), d2(1, 2), d2(1, 3), d2(2, 3)};
}

/// OG^2 = 1 - (sum of the six squared edges)/16.
inline Real og_squared(const EdgeParams& p) {
  Real sum = p.d12 + p.d13 + p.d14 + p.d23 + p.d24 + p.d34;
  return 1 - sum / 16;
}

/// The four squared centroid-to-vertex distances. Each g_i equals
/// (3*(edges at vertex i) - (edges of the opposite face)) / 16, which
/// condenses to (4*S_i - S)/16 with S_i the squared edges at vertex i
/// and S the total.
inline CentroidData centroid_distances(const EdgeParams& p, const Real& tolerance) {
  Real S = p.d12 + p.d13 + p.d14 + p.d23 + p.d24 + p.d34;
  Real S1 = p.d12 + p.d13 + p.d14;
  Real S2 = p.d12 + p.d23 + p.d24;
  Real S3 = p.d13 + p.d23 + p.d34;
  Real S4 = p.d14 + p.d24 + p.d34;
  CentroidData cd;
  cd.g1 = (4 * S1 - S) / 16;
  cd.g2 = (4 * S2 - S) / 16;
  cd.g3 = (4 * S3 - S) / 16;
  cd.g4 = (4 * S4 - S) / 16;
  if (cd.g1 <= tolerance || cd.g2 <= tolerance || cd.g3 <= tolerance ||
      cd.g4 <= tolerance) {
    throw NonPositiveG("centroid-to-vertex distance at or below tolerance");
  }
  cd.p0 = (cd.g1 + cd.g2 + cd.g3 + cd.g4) / 4;
  cd.og2 = 1 - cd.p0;
  return cd;
}

namespace detail {

inline Real gamma_of(const std::array<Real, 6>& d) {
  // Bordered distance determinant: 288 * V^2 for a tetrahedron.
  SmallMatrix m(5);
  const Real one(1);
  for (int i = 1; i < 5; ++i) {
    m.at(0, i) = one;
    m.at(i, 0) = one;
  }
  auto set = [&](int r, int c, const Real& val) {
    m.at(r, c) = val;
    m.at(c, r) = val;
  };
  set(1, 2, d[0]);  // d12
  set(1, 3, d[1]);  // d13
  set(1, 4, d[2]);  // d14
  set(2, 3, d[3]);  // d23
  set(2, 4, d[4]);  // d24
  set(3, 4, d[5]);  // d34
  return det(m);
}

}  // namespace detail

/// Gamma = 288 * V^2; positive iff the four points are not coplanar.
inline Real gamma(const EdgeParams& p) { return detail::gamma_of(p.as_array()); }

/// The unbordered 4x4 distance determinant; satisfies Gamma + Delta/2 = 0
/// exactly on unit-circumradius configurations, and Delta = -Pt.
inline Real delta(const EdgeParams& p) {
  SmallMatrix m(4);
  auto set = [&](int r, int c, const Real& val) {
    m.at(r, c) = val;
    m.at(c, r) = val;
  };
  set(0, 1, p.d12);
  set(0, 2, p.d13);
  set(0, 3, p.d14);
  set(1, 2, p.d23);
  set(1, 3, p.d24);
  set(2, 3, p.d34);
  return det(m);
}

/// Products of opposite squared edges, in the fixed pair order
/// (d12*d34, d13*d24, d14*d23).
inline std::array<Real, 3> opposite_products(const EdgeParams& p) {
  return {p.d12 * p.d34, p.d13 * p.d24, p.d14 * p.d23};
}

/// Ptolemy quantity Pt = -Delta, evaluated in the square-root-free
/// degree-8 polynomial form: with x = d14*d23, y = d13*d24, z = d12*d34,
/// Pt = 2(xy+yz+zx) - x^2 - y^2 - z^2. Equals 576 * V^2 at circumradius 1
/// and vanishes exactly on cyclic quadrilaterals.
inline Real ptolemy(const EdgeParams& p) {
  return heron16(p.d14 * p.d23, p.d13 * p.d24, p.d12 * p.d34);
}

/// Pt in the four-factor form (bb'+cc'-aa')(cc'+aa'-bb')(aa'+bb'-cc')
/// (aa'+bb'+cc') with aa' = sqrt(d14*d23), bb' = sqrt(d13*d24),
/// cc' = sqrt(d12*d34). Cross-check route for ptolemy().
inline Real ptolemy_product_form(const EdgeParams& p) {
  Real aa = sqrt(p.d14 * p.d23);
  Real bb = sqrt(p.d13 * p.d24);
  Real cc = sqrt(p.d12 * p.d34);
  return (bb + cc - aa) * (cc + aa - bb) * (aa + bb - cc) * (aa + bb + cc);
}

/// Sum of the three opposite-edge products of square roots,
/// aa' + bb' + cc'; at most 8 on valid configurations with equality
/// exactly for isosceles tetrahedra and rectangles.
inline Real root_product_sum(const EdgeParams& p) {
  return sqrt(p.d14 * p.d23) + sqrt(p.d13 * p.d24) + sqrt(p.d12 * p.d34);
}

/// Whether six squared lengths (canonical order) are realizable as a
/// (possibly flat) tetrahedron: the face (B,C,A) has nonnegative area and
/// the bordered determinant is nonnegative.
inline bool realizable(const std::array<Real, 6>& d, const Real& tolerance) {
  // Face through vertices A, B, C has squared sides d23, d13, d12.
  if (heron16(d[3], d[1], d[0]) < -tolerance) return false;
  return detail::gamma_of(d) >= -tolerance;
}

/// Isosceles (opposite pairs equal, non-planar), Rectangle (opposite
/// pairs equal, planar) or Generic. Planarity is decided by Gamma, not
/// by coordinates, so the classification works on bare parameters.
inline ShapeClass shape_class(const EdgeParams& p, const Real& tolerance) {
  bool pairs = abs(p.d12 - p.d34) <= tolerance &&
               abs(p.d13 - p.d24) <= tolerance &&
               abs(p.d14 - p.d23) <= tolerance;
  if (!pairs) return ShapeClass::Generic;
  return gamma(p) > tolerance ? ShapeClass::Isosceles : ShapeClass::Rectangle;
}

/// Builds (s, t, u) from squared side lengths of a triangle inscribed in
/// the unit circle.
inline TriangleParams triangle_params(const Real& a2, const Real& b2,
                                      const Real& c2, const Real& tolerance) {
  if (a2 <= 0 || b2 <= 0 || c2 <= 0) {
    throw InputError("squared side lengths must be positive");
  }
  TriangleParams tp;
  tp.s = a2 + b2 + c2;
  tp.t = a2 * b2 + b2 * c2 + c2 * a2;
  tp.u = a2 * b2 * c2;
  if (abs(tp.u - (4 * tp.t - tp.s * tp.s)) > tolerance) {
    throw NotUnitCircumradius("u = 4t - s^2 violated: not inscribed in the unit circle");
  }
  return tp;
}

/// Validates bare (s, t, u) values as unit-circle triangle parameters.
inline TriangleParams validate_triangle_params(const Real& s, const Real& t,
                                               const Real& u, const Real& tolerance) {
  if (s <= 0 || s > 9 + tolerance) {
    throw InputError("s must lie in (0, 9]");
  }
  if (4 * t <= s * s - tolerance || 3 * t > s * s + tolerance) {
    throw InputError("t must lie in (s^2/4, s^2/3]");
  }
  if (abs(u - (4 * t - s * s)) > tolerance) {
    throw NotUnitCircumradius("u = 4t - s^2 violated: not inscribed in the unit circle");
  }
  return {s, t, u};
}

/// Validates bare squared-edge parameters: nonnegative, not all zero,
/// realizable, and on the unit sphere (bordered-determinant constraint;
/// for planar inputs, where that constraint is vacuous, the two face
/// circumradius relations d_ij*d_jk*d_ik = heron16(...) take over).
inline EdgeParams validate_edge_params(const std::array<Real, 6>& d,
                                       const Real& tolerance) {
  Real total(0);
  for (const Real& x : d) {
    if (x < 0) throw InputError("squared edge lengths must be nonnegative");
    total += x;
  }
  if (total <= tolerance) throw InputError("all edge parameters are zero");
  if (!realizable(d, tolerance)) {
    throw InputError("six lengths are not realizable as a tetrahedron");
  }
  EdgeParams p = EdgeParams::from_array(d);
  Real G = gamma(p);
  if (G > tolerance) {
    if (abs(G + delta(p) / 2) > 64 * tolerance) {
      throw InputError("circumradius is not 1: Gamma + Delta/2 does not vanish");
    }
  } else {
    // Planar: require both triangle faces ABC and BCD to sit on a unit
    // circle (side products equal 16 * squared area).
    Real fa = abs(p.d12 * p.d23 * p.d13 - heron16(p.d12, p.d23, p.d13));
    Real fb = abs(p.d23 * p.d34 * p.d24 - heron16(p.d23, p.d34, p.d24));
    if (fa > 64 * tolerance || fb > 64 * tolerance) {
      throw InputError("planar quadrilateral is not inscribed in the unit circle");
    }
  }
  return p;
}

}  // namespace circumflow
