#pragma once

#include <vector>

#include "circumflow/errors.hpp"
#include "circumflow/precision.hpp"

namespace circumflow {

using Vec = std::vector<Real>;

inline Real dot(const Vec& x, const Vec& y) {
  Real acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

inline Real norm2(const Vec& x) { return dot(x, x); }

inline Vec sub(const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

/// x + c*y
inline Vec axpy(const Vec& x, const Real& c, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + c * y[i];
  return r;
}

inline Vec scaled(const Vec& x, const Real& c) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

inline Vec centroid(const std::vector<Vec>& pts) {
  Vec g(pts.front().size(), Real(0));
  for (const Vec& v : pts) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += v[i];
  }
  Real inv = Real(1) / Real(static_cast<unsigned>(pts.size()));
  for (Real& gi : g) gi *= inv;
  return g;
}

/// Dense square matrix of order 4 or 5, the only sizes the distance
/// determinants need. Row-major, zero-initialized.
class SmallMatrix {
 public:
  explicit SmallMatrix(int order) : order_(order), e_(order * order, Real(0)) {
    if (order != 4 && order != 5) {
      throw InputError("SmallMatrix supports order 4 or 5 only");
    }
  }

  int order() const { return order_; }
  Real& at(int r, int c) { return e_[r * order_ + c]; }
  const Real& at(int r, int c) const { return e_[r * order_ + c]; }

 private:
  int order_;
  std::vector<Real> e_;
};

/// Determinant by fraction-free (Bareiss) elimination with partial
/// pivoting. The distance matrices have zero diagonals, so pivoting is
/// required; the fraction-free update keeps intermediate growth mild at
/// these orders.
inline Real det(SmallMatrix m) {
  const int n = m.order();
  int sign = 1;
  Real prev(1);
  for (int k = 0; k + 1 < n; ++k) {
    int piv = k;
    Real best = abs(m.at(k, k));
    for (int r = k + 1; r < n; ++r) {
      Real mag = abs(m.at(r, k));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best == 0) return Real(0);
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(piv, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = Real(0);
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

}  // namespace circumflow
