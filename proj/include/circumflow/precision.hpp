#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "circumflow/errors.hpp"

namespace circumflow {

/// Arbitrary-precision real scalar. The working precision is the thread's
/// default mpfr precision; set it through PrecisionPolicy::apply() or
/// ScopedPrecision before doing arithmetic.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// Decimal digits that make the backend allocate at least `bits` of
/// binary precision (it converts digits back to bits as d*1000/301).
inline unsigned decimal_digits_for_bits(unsigned bits) {
  return static_cast<unsigned>((static_cast<unsigned long>(bits) * 301u + 999u) / 1000u);
}

/// 2^e as an exact Real at the current working precision.
inline Real pow2(long e) {
  return boost::multiprecision::ldexp(Real(1), e);
}

/// Binary precision shared by all Real arithmetic, with the derived
/// comparison tolerance 2^-(bits/2) used by every geometric predicate.
class PrecisionPolicy {
 public:
  static constexpr unsigned kDefaultBits = 512;

  explicit PrecisionPolicy(unsigned significand_bits = kDefaultBits)
      : bits_(significand_bits) {
    if (bits_ < 64) {
      throw InputError("significand_bits must be at least 64");
    }
  }

  unsigned significand_bits() const { return bits_; }

  /// Comparison tolerance 2^-(bits/2); exact at any working precision.
  Real tolerance() const { return pow2(-static_cast<long>(bits_ / 2)); }

  /// Points below 2^-(bits-16) are treated as underflowed in tail fits.
  Real underflow_floor() const { return pow2(-static_cast<long>(bits_ - 16)); }

  /// Sets the calling thread's default Real precision. Precision state is
  /// per thread; worker threads must call this themselves.
  void apply() const { Real::default_precision(decimal_digits_for_bits(bits_)); }

 private:
  unsigned bits_;
};

/// RAII guard that applies a policy and restores the previous thread
/// default on destruction.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(const PrecisionPolicy& policy)
      : saved_digits_(Real::default_precision()) {
    policy.apply();
  }
  ~ScopedPrecision() { Real::default_precision(saved_digits_); }

  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits_;
};

}  // namespace circumflow
