#pragma once

#include <array>
#include <optional>
#include <vector>

#include "circumflow/dynamics.hpp"

namespace circumflow {

enum class LimitRegime { Tetra, Quad };

/// Closed-form limit shape of an orbit. Opposite pairs of the limit are
/// equal, so three values describe all six squared edges; they sum to 8.
/// rate_r bounds the geometric convergence speed: in [1/3, 1) for
/// tetrahedra, [0, 1) for quadrilaterals (0 exactly when the limit is a
/// square).
struct LimitPrediction {
  LimitRegime regime;
  Real d12_inf, d13_inf, d14_inf;
  Real L;
  Real rate_r;
};

/// Limit isosceles tetrahedron of a non-planar orbit:
///   L = 64 / (sqrt(d12 d34) + sqrt(d13 d24) + sqrt(d14 d23))^2,
///   d_ij_inf = sqrt(L * d_ij * d_kl) over opposite pairs (ij, kl),
///   rate_r = max |d_ij_inf - 2| / 2.
/// The opposite-pair products are invariant under the iteration up to a
/// common factor, which pins the limit in closed form.
inline LimitPrediction tetra_limit(const EdgeParams& p, const Real& tolerance) {
  if (gamma(p) <= tolerance) {
    throw PlanarInput("planar input: use the quadrilateral predictor");
  }
  Real sum = root_product_sum(p);
  LimitPrediction lim;
  lim.regime = LimitRegime::Tetra;
  lim.L = 64 / (sum * sum);
  lim.d12_inf = sqrt(lim.L * p.d12 * p.d34);
  lim.d13_inf = sqrt(lim.L * p.d13 * p.d24);
  lim.d14_inf = sqrt(lim.L * p.d14 * p.d23);
  Real r = abs(lim.d12_inf - 2) / 2;
  r = std::max(r, Real(abs(lim.d13_inf - 2) / 2));
  r = std::max(r, Real(abs(lim.d14_inf - 2) / 2));
  lim.rate_r = r;
  return lim;
}

/// Limit rectangle of a planar convex cyclic orbit:
///   d13_inf = 4,  d12_inf = 4 sqrt(d12 d34) / sqrt(d13 d24),
///   d14_inf = 4 - d12_inf,  rate_r = |d12_inf - 2| / 2.
/// Requires the convex-cyclic labeling in which (d13, d24) are the
/// diagonals; equivalently sqrt(d13 d24) = sqrt(d12 d34) + sqrt(d14 d23)
/// with the diagonal product largest.
inline LimitPrediction quad_limit(const EdgeParams& p, const Real& tolerance) {
  if (gamma(p) > tolerance) {
    throw NonPlanarInput("non-planar input: use the tetrahedron predictor");
  }
  Real e12 = sqrt(p.d12 * p.d34);
  Real e13 = sqrt(p.d13 * p.d24);
  Real e14 = sqrt(p.d14 * p.d23);
  if (e13 < e12 || e13 < e14 || abs(e13 - e12 - e14) > 64 * tolerance) {
    throw InputError("parameters are not in convex-cyclic labeling");
  }
  LimitPrediction lim;
  lim.regime = LimitRegime::Quad;
  lim.L = 16 / (e13 * e13);
  lim.d13_inf = Real(4);
  lim.d12_inf = 4 * e12 / e13;
  lim.d14_inf = 4 - lim.d12_inf;
  lim.rate_r = abs(lim.d12_inf - 2) / 2;
  return lim;
}

/// All triangle orbits converge to the equilateral parameters (9, 27, 27).
inline TriangleParams triangle_limit() { return {Real(9), Real(27), Real(27)}; }

/// Whether the configuration is isodynamic: for tetrahedra the three
/// opposite-edge products are equal (limit is regular), for cyclic
/// quadrilaterals the two side products are equal (limit is a square).
/// The defining inequalities are taken boundary-inclusive so that the
/// regular tetrahedron and the square themselves qualify.
inline bool is_isodynamic(const EdgeParams& p, const Real& tolerance) {
  auto pr = opposite_products(p);
  if (gamma(p) > tolerance) {
    bool equal = abs(pr[0] - pr[1]) <= tolerance &&
                 abs(pr[1] - pr[2]) <= tolerance &&
                 abs(pr[0] - pr[2]) <= tolerance;
    return equal && pr[0] <= Real(64) / 9 + tolerance;
  }
  return abs(pr[0] - pr[2]) <= tolerance && pr[0] <= 4 + tolerance;
}

/// Deviations of one orbit step from the predicted limit.
/// h_ij = d_ij - d_ij_inf; delta = sum of the h_ij (equals -16 * og2
/// identically); epsilon is the weighted square of pair imbalances,
/// nonnegative and vanishing exactly on isosceles/rectangle states.
struct StepResiduals {
  std::array<Real, 6> h;
  Real delta;
  Real epsilon;
};

inline std::vector<StepResiduals> residual_diagnostics(
    const std::vector<OrbitRecord>& orbit, const LimitPrediction& lim) {
  std::vector<StepResiduals> out;
  out.reserve(orbit.size());
  for (const OrbitRecord& rec : orbit) {
    const EdgeParams* p = std::get_if<EdgeParams>(&rec.state);
    if (p == nullptr) {
      throw InputError("residual diagnostics need a tetra or quad orbit");
    }
    StepResiduals sr;
    sr.h = {p->d12 - lim.d12_inf, p->d13 - lim.d13_inf, p->d14 - lim.d14_inf,
            p->d23 - lim.d14_inf, p->d24 - lim.d13_inf, p->d34 - lim.d12_inf};
    sr.delta = sr.h[0] + sr.h[1] + sr.h[2] + sr.h[3] + sr.h[4] + sr.h[5];
    Real q12 = sr.h[0] - sr.h[5];
    Real q13 = sr.h[1] - sr.h[4];
    Real q14 = sr.h[2] - sr.h[3];
    sr.epsilon = q12 * q12 * lim.d12_inf + q13 * q13 * lim.d13_inf +
                 q14 * q14 * lim.d14_inf;
    out.push_back(std::move(sr));
  }
  return out;
}

/// Empirical convergence order fitted from a positive OG sequence.
/// order/constant fit OG_{n+1} = C * OG_n^q on the usable tail; lambda is
/// reported when q is close to 2, fitting the doubling model
/// OG_n = lambda^(2^n); residual is the root mean square log-misfit.
struct OrderEstimate {
  Real order;
  Real constant;
  std::optional<Real> lambda;
  Real residual;
  int points_used = 0;
};

/// Fits the convergence order by least squares on
/// log OG_{n+1} = log C + q log OG_n, over consecutive decreasing pairs
/// in the tail window (underflow_floor, 10^-2): the early transient and
/// roundoff-saturated tail carry no information about the order.
inline OrderEstimate estimate_order(const std::vector<Real>& og,
                                    const PrecisionPolicy& policy) {
  if (og.size() < 4) {
    throw InsufficientData("need at least 4 sequence points");
  }
  for (const Real& v : og) {
    if (v <= 0) throw InputError("sequence must be strictly positive");
  }
  const Real floor = policy.underflow_floor();
  int above = 0;
  for (const Real& v : og) {
    if (v > floor) ++above;
  }
  if (above < 4) {
    throw UnderflowTail("fewer than 4 points above the underflow floor");
  }
  const Real upper = Real(1) / 100;
  std::vector<std::pair<Real, Real>> pts;  // (log og_n, log og_{n+1})
  std::vector<std::pair<long, Real>> doubling;  // (n, log og_n)
  for (std::size_t i = 0; i + 1 < og.size(); ++i) {
    bool in_i = og[i] > floor && og[i] < upper;
    bool in_j = og[i + 1] > floor && og[i + 1] < upper;
    if (in_i && in_j && og[i + 1] < og[i]) {
      pts.emplace_back(log(og[i]), log(og[i + 1]));
    }
    if (in_i) doubling.emplace_back(static_cast<long>(i), log(og[i]));
  }
  if (pts.size() < 2) {
    throw InsufficientData("fewer than 2 decreasing pairs in the fit window");
  }
  Real n(static_cast<unsigned>(pts.size()));
  Real sx(0), sy(0), sxx(0), sxy(0);
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  OrderEstimate est;
  est.points_used = static_cast<int>(pts.size());
  Real den = n * sxx - sx * sx;
  if (den == 0) throw InsufficientData("degenerate fit window");
  est.order = (n * sxy - sx * sy) / den;
  Real logc = (sy - est.order * sx) / n;
  est.constant = exp(logc);
  Real ss(0);
  for (const auto& [x, y] : pts) {
    Real r = y - est.order * x - logc;
    ss += r * r;
  }
  est.residual = sqrt(ss / n);
  if (abs(est.order - 2) <= Real(1) / 4 && !doubling.empty()) {
    // Through-origin least squares for log OG_n = 2^n log lambda.
    Real num(0), den2(0);
    for (const auto& [idx, lg] : doubling) {
      Real w = pow2(idx);
      num += w * lg;
      den2 += w * w;
    }
    if (den2 > 0) est.lambda = exp(num / den2);
  }
  return est;
}

}  // namespace circumflow
