#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "circumflow/dynamics.hpp"

namespace circumflow {

/// Deterministic sampler: a 64-bit Mersenne Twister supplies uniform
/// bits, mapped to (0,1) and through the Marsaglia polar transform to
/// standard Gaussians evaluated in Real. Identical seeds give identical
/// configurations bit for bit at a fixed precision.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in (0,1): the top 53 bits offset by half a spacing, so
  /// neither endpoint can occur.
  Real uniform01() {
    std::uint64_t x = rng_();
    return (Real(x >> 11) + Real(1) / 2) * pow2(-53);
  }

  Real gaussian() {
    if (spare_) {
      Real v = *spare_;
      spare_.reset();
      return v;
    }
    for (;;) {
      Real u = 2 * uniform01() - 1;
      Real v = 2 * uniform01() - 1;
      Real s = u * u + v * v;
      if (s >= 1 || s == 0) continue;
      Real f = sqrt(-2 * log(s) / s);
      spare_ = v * f;
      return u * f;
    }
  }

  /// Uniform direction on the unit sphere in R^dim.
  Vec unit_vector(int dim) {
    for (;;) {
      Vec v(dim);
      for (int i = 0; i < dim; ++i) v[i] = gaussian();
      Real n2 = norm2(v);
      if (n2 > pow2(-40)) return scaled(v, 1 / sqrt(n2));
    }
  }

 private:
  std::mt19937_64 rng_;
  std::optional<Real> spare_;
};

/// Draws a random configuration for the regime: independent uniform
/// unit-sphere vertices, redrawn until admissible. Tetrahedra reject
/// near-planar draws (Gamma <= 10*tolerance); quadrilaterals and
/// triangles reject any two vertices closer than 10^-3. The vertices
/// regime (dim up to 20) needs no rejection.
inline VertexConfig generate_random(Regime regime, int dim, std::uint64_t seed,
                                    const PrecisionPolicy& policy) {
  const Real tol = policy.tolerance();
  const Real min_dist2 = Real(1) / 1000000;  // (10^-3)^2
  RandomSource src(seed);
  constexpr int kMaxAttempts = 1000000;

  auto min_pair_dist2 = [](const std::vector<Vec>& pts) {
    Real best(-1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        Real d = norm2(sub(pts[i], pts[j]));
        if (best < 0 || d < best) best = d;
      }
    }
    return best;
  };

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    switch (regime) {
      case Regime::Tetra: {
        std::vector<Vec> pts;
        for (int i = 0; i < 4; ++i) pts.push_back(src.unit_vector(3));
        VertexConfig c(3, std::move(pts), tol);
        if (gamma(params_from_vertices(c)) > 10 * tol) return c;
        break;
      }
      case Regime::Quad: {
        std::vector<Vec> pts;
        for (int i = 0; i < 4; ++i) pts.push_back(src.unit_vector(2));
        if (min_pair_dist2(pts) < min_dist2) break;
        return VertexConfig::quadrilateral(std::move(pts), tol);
      }
      case Regime::Triangle: {
        std::vector<Vec> pts;
        for (int i = 0; i < 3; ++i) pts.push_back(src.unit_vector(2));
        if (min_pair_dist2(pts) < min_dist2) break;
        return VertexConfig(2, std::move(pts), tol);
      }
      case Regime::Vertices: {
        if (dim < 2 || dim > 20) throw InputError("dim must lie in [2, 20]");
        std::vector<Vec> pts;
        for (int i = 0; i < dim + 1; ++i) pts.push_back(src.unit_vector(dim));
        return VertexConfig(dim, std::move(pts), tol);
      }
      case Regime::Trapezoid:
        throw InputError("trapezoid regime takes explicit abscissas, not random draws");
    }
  }
  throw RejectionExhausted("no admissible configuration within the attempt budget");
}

}  // namespace circumflow
