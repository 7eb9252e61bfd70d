#pragma once

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "circumflow/simplex.hpp"
#include "circumflow/sphere.hpp"

namespace circumflow {

enum class Regime { Tetra, Quad, Triangle, Trapezoid, Vertices };

/// Isosceles trapezoid inscribed in the unit circle, tracked by the
/// abscissas of its two vertical edges. The state follows the shape, not
/// vertex labels: the recurrence below relabels the two vertical edges
/// each step so that rectangles (x, -x) are fixed points.
struct TrapezoidState {
  Real a, b;
};

inline TrapezoidState make_trapezoid(const Real& a, const Real& b,
                                     const Real& tolerance) {
  if (a * a >= 1 || b * b >= 1) {
    throw InputError("trapezoid abscissas must satisfy a^2 < 1 and b^2 < 1");
  }
  if (abs(a - b) <= tolerance) {
    throw InputError("trapezoid abscissas must be distinct");
  }
  return {a, b};
}

/// Signed centroid abscissa of the trapezoid; |g| is its OG distance.
inline Real trapezoid_g(const TrapezoidState& st) { return (st.a + st.b) / 2; }

/// One projection step in vertex space, any dimension: each vertex maps
/// to the second intersection of its centroid ray with the sphere, then
/// is renormalized. Returns the image and the largest renormalization
/// magnitude | |p| - 1 | seen before renormalizing.
inline std::pair<VertexConfig, Real> step_vertices(const VertexConfig& c,
                                                   const Real& tolerance) {
  Vec g = c.centroid();
  std::vector<Vec> out;
  out.reserve(c.vertices().size());
  Real drift(0);
  for (const Vec& v : c.vertices()) {
    Vec p = second_sphere_intersection(v, g, tolerance);
    Real nrm = sqrt(norm2(p));
    Real err = abs(nrm - 1);
    if (err > drift) drift = err;
    out.push_back(scaled(p, 1 / nrm));
  }
  return {VertexConfig(c.dim(), std::move(out), tolerance), drift};
}

struct ParamStep {
  EdgeParams next;
  Real p1;
};

/// One projection step in parameter space:
///   d_ij' = p0^2 * d_ij / (g_i * g_j),  p1 = (p0^2/16) * sum d_ij/(g_i g_j).
/// p1 is also recomputed as 1 - OG^2 of the output; the two routes must
/// agree to 64*tolerance or the step reports a consistency fault.
inline ParamStep step_params(const EdgeParams& p, const Real& tolerance) {
  CentroidData cd = centroid_distances(p, tolerance);
  if (cd.p0 <= tolerance) {
    throw VanishingPower("centroid power at or below tolerance");
  }
  Real p0sq = cd.p0 * cd.p0;
  Real r12 = p.d12 / (cd.g1 * cd.g2);
  Real r13 = p.d13 / (cd.g1 * cd.g3);
  Real r14 = p.d14 / (cd.g1 * cd.g4);
  Real r23 = p.d23 / (cd.g2 * cd.g3);
  Real r24 = p.d24 / (cd.g2 * cd.g4);
  Real r34 = p.d34 / (cd.g3 * cd.g4);
  ParamStep out;
  out.next = {p0sq * r12, p0sq * r13, p0sq * r14,
              p0sq * r23, p0sq * r24, p0sq * r34};
  out.p1 = p0sq * (r12 + r13 + r14 + r23 + r24 + r34) / 16;
  Real check = 1 - og_squared(out.next);
  if (abs(out.p1 - check) > 64 * tolerance) {
    throw ConsistencyFault("p1 disagrees with 1 - OG^2 of the stepped parameters");
  }
  return out;
}

/// Amplification factor of one parameter step: Lambda = p0^4/(g1 g2 g3 g4),
/// at least 1 with equality exactly on isosceles/rectangle configurations;
/// the Ptolemy quantity scales as Pt' = Lambda^2 * Pt.
inline Real lambda_factor(const CentroidData& cd) {
  Real p0sq = cd.p0 * cd.p0;
  return (p0sq * p0sq) / (cd.g1 * cd.g2 * cd.g3 * cd.g4);
}

/// One projection step on unit-circle triangle parameters:
///   s1 = s^2 (6t - s^2) / D,  t1 = s^4 t (9t - 2s^2) / D^2,
///   u1 = 4 t1 - s1^2,  with D = -4s^3 + 18st - 108t + 27s^2.
/// D > 0 on valid inputs; s and u never decrease along orbits.
inline TriangleParams step_triangle(const TriangleParams& tp,
                                    const Real& tolerance) {
  const Real& s = tp.s;
  const Real& t = tp.t;
  Real s2 = s * s;
  Real D = -4 * s2 * s + 18 * s * t - 108 * t + 27 * s2;
  if (D <= tolerance) {
    throw DomainError("triangle step denominator D at or below tolerance");
  }
  TriangleParams out;
  out.s = s2 * (6 * t - s2) / D;
  out.t = s2 * s2 * t * (9 * t - 2 * s2) / (D * D);
  out.u = 4 * out.t - out.s * out.s;
  return out;
}

/// One projection step on trapezoid abscissas:
///   a' = -(a^2 b + 2 a b^2 + b^3 - 4a) / (a^2 - 2ab - 3b^2 + 4)
/// and symmetrically for b' (swap a and b). Rectangles (x, -x) are fixed.
inline TrapezoidState step_trapezoid(const TrapezoidState& st,
                                     const Real& tolerance) {
  const Real& a = st.a;
  const Real& b = st.b;
  Real den_a = a * a - 2 * a * b - 3 * b * b + 4;
  Real den_b = b * b - 2 * a * b - 3 * a * a + 4;
  if (abs(den_a) <= tolerance || abs(den_b) <= tolerance) {
    throw DomainError("trapezoid step denominator at or below tolerance");
  }
  TrapezoidState out;
  out.a = -(a * a * b + 2 * a * b * b + b * b * b - 4 * a) / den_a;
  out.b = -(b * b * a + 2 * b * a * a + a * a * a - 4 * b) / den_b;
  if (out.a * out.a >= 1 || out.b * out.b >= 1) {
    throw DomainError("trapezoid step left the unit circle");
  }
  return out;
}

using OrbitState = std::variant<EdgeParams, TriangleParams, TrapezoidState, VertexConfig>;

/// Per-step orbit diagnostics. pt is populated in the tetra regime only;
/// pair_products in the tetra and quad regimes; renorm_drift in the
/// vertices regime.
struct OrbitRecord {
  int step = 0;
  OrbitState state;
  Real og2;
  std::optional<Real> pt;
  std::optional<std::array<Real, 3>> pair_products;
  Real p;
  std::optional<Real> renorm_drift;
};

enum class StopReason { StepLimit, Converged, StationaryProducts };

struct OrbitResult {
  std::vector<OrbitRecord> records;
  bool converged = false;
  StopReason reason = StopReason::StepLimit;

  /// Snapshots of the two subsequences exposed by the vertex regime: the
  /// even iterates converge to a limit shape, the odd ones to its
  /// point reflection through the origin.
  std::vector<OrbitRecord> even_records() const {
    std::vector<OrbitRecord> out;
    for (const auto& r : records)
      if (r.step % 2 == 0) out.push_back(r);
    return out;
  }
  std::vector<OrbitRecord> odd_records() const {
    std::vector<OrbitRecord> out;
    for (const auto& r : records)
      if (r.step % 2 == 1) out.push_back(r);
    return out;
  }
};

namespace detail {

inline OrbitRecord make_record(int step, const OrbitState& state, Regime regime,
                               const Real& tolerance) {
  OrbitRecord r;
  r.step = step;
  r.state = state;
  switch (regime) {
    case Regime::Tetra:
    case Regime::Quad: {
      const EdgeParams& p = std::get<EdgeParams>(state);
      if (regime == Regime::Quad && gamma(p) > tolerance) {
        throw ConsistencyFault("quadrilateral orbit left the planar set");
      }
      r.og2 = og_squared(p);
      if (regime == Regime::Tetra) r.pt = ptolemy(p);
      r.pair_products = opposite_products(p);
      break;
    }
    case Regime::Triangle: {
      const TriangleParams& tp = std::get<TriangleParams>(state);
      r.og2 = 1 - tp.s / 9;
      break;
    }
    case Regime::Trapezoid: {
      Real g = trapezoid_g(std::get<TrapezoidState>(state));
      r.og2 = g * g;
      break;
    }
    case Regime::Vertices: {
      const VertexConfig& c = std::get<VertexConfig>(state);
      r.og2 = norm2(c.centroid());
      r.renorm_drift = Real(0);
      break;
    }
  }
  r.p = 1 - r.og2;
  return r;
}

inline bool state_matches(const OrbitState& state, Regime regime) {
  switch (regime) {
    case Regime::Tetra:
    case Regime::Quad:
      return std::holds_alternative<EdgeParams>(state);
    case Regime::Triangle:
      return std::holds_alternative<TriangleParams>(state);
    case Regime::Trapezoid:
      return std::holds_alternative<TrapezoidState>(state);
    case Regime::Vertices:
      return std::holds_alternative<VertexConfig>(state);
  }
  return false;
}

}  // namespace detail

/// Runs up to `steps` projection steps from `initial`. Record 0 is the
/// initial state; the run stops early once og2 drops below tolerance
/// (converged) or the three opposite-edge products are stationary to
/// tolerance for 3 consecutive steps. Step failures are rethrown as
/// OrbitError tagged with the failing step index.
inline OrbitResult run_orbit(OrbitState initial, int steps, Regime regime,
                             const PrecisionPolicy& policy) {
  if (steps < 0) throw InputError("steps must be nonnegative");
  if (!detail::state_matches(initial, regime)) {
    throw InputError("initial state does not match the regime");
  }
  const Real tol = policy.tolerance();
  OrbitResult result;
  result.records.reserve(static_cast<std::size_t>(steps) + 1);
  result.records.push_back(detail::make_record(0, initial, regime, tol));

  int stationary = 0;
  auto stop_after = [&](const OrbitRecord& rec) {
    if (rec.og2 < tol) {
      result.converged = true;
      result.reason = StopReason::Converged;
      return true;
    }
    if (rec.pair_products && rec.step > 0) {
      const auto& prev = *result.records[rec.step - 1].pair_products;
      const auto& cur = *rec.pair_products;
      bool still = abs(cur[0] - prev[0]) <= tol && abs(cur[1] - prev[1]) <= tol &&
                   abs(cur[2] - prev[2]) <= tol;
      stationary = still ? stationary + 1 : 0;
      if (stationary >= 3) {
        result.reason = StopReason::StationaryProducts;
        return true;
      }
    }
    return false;
  };

  if (stop_after(result.records.front())) return result;
  OrbitState state = std::move(initial);
  for (int k = 1; k <= steps; ++k) {
    try {
      switch (regime) {
        case Regime::Tetra:
        case Regime::Quad:
          state = step_params(std::get<EdgeParams>(state), tol).next;
          break;
        case Regime::Triangle:
          state = step_triangle(std::get<TriangleParams>(state), tol);
          break;
        case Regime::Trapezoid:
          state = step_trapezoid(std::get<TrapezoidState>(state), tol);
          break;
        case Regime::Vertices: {
          auto [next, drift] = step_vertices(std::get<VertexConfig>(state), tol);
          state = std::move(next);
          result.records.push_back(detail::make_record(k, state, regime, tol));
          result.records.back().renorm_drift = drift;
          if (stop_after(result.records.back())) return result;
          continue;
        }
      }
      result.records.push_back(detail::make_record(k, state, regime, tol));
    } catch (const OrbitError&) {
      throw;
    } catch (const NumericFault& e) {
      throw OrbitError(k, e.what());
    } catch (const InputError& e) {
      throw OrbitError(k, e.what());
    }
    if (stop_after(result.records.back())) return result;
  }
  return result;
}

}  // namespace circumflow
