#pragma once

// Closed real intervals with MPFR endpoints and outward rounding. Every
// operation returns an interval containing the exact result for all inputs in
// the operand intervals.

#include "siegel/arith.hpp"

#include <mpfr.h>

namespace siegel {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Rat& value, mpfr_prec_t prec);
  Interval(const Int& value, mpfr_prec_t prec);
  Interval(long value, mpfr_prec_t prec);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  /// x^(p/q) for q >= 1 and x > 0 (x >= 0 allowed when p > 0).
  Interval pow(long p, unsigned long q = 1) const;
  Interval sqrt() const { return pow(1, 2); }
  /// max(x, 0) endpoint-wise.
  Interval clamp_nonnegative() const;

  /// Smallest multiple of 2^-frac_bits that is >= hi.
  Rat upper_dyadic(unsigned frac_bits) const;
  /// Largest multiple of 2^-frac_bits that is <= lo.
  Rat lower_dyadic(unsigned frac_bits) const;
  double mid() const;

 private:
  void swap(Interval& other) noexcept;
  mpfr_t lo_, hi_;
};

/// Working precision used for a requested number of fractional output bits.
inline mpfr_prec_t working_precision(unsigned frac_bits) { return static_cast<mpfr_prec_t>(frac_bits) + 384; }

}  // namespace siegel
