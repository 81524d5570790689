#include "siegel/interval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace siegel {

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rat& value, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Int& value, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(long value, mpfr_prec_t prec) : Interval(Int(value), prec) {}

Interval::Interval(const Interval& other) : Interval(other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) { swap(other); }

Interval& Interval::operator=(Interval other) noexcept {
  swap(other);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::swap(Interval& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_})
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw std::domain_error("interval division by zero");
  Interval inv(b.precision());
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::pow(long p, unsigned long q) const {
  if (q == 0) throw std::invalid_argument("zero root index");
  if (mpfr_sgn(lo_) < 0 || (mpfr_sgn(lo_) == 0 && p <= 0))
    throw std::domain_error("fractional power of a non-positive interval");
  const unsigned long g = std::gcd(static_cast<unsigned long>(p < 0 ? -p : p), q);
  if (g > 1) return pow(p / static_cast<long>(g), q / g);
  Interval r(precision());
  // x^(p/q) is increasing in x for p > 0 and decreasing for p < 0.
  const mpfr_t& for_lo = p >= 0 ? lo_ : hi_;
  const mpfr_t& for_hi = p >= 0 ? hi_ : lo_;
  // A root rounded toward the target side keeps the final power on that side:
  // for p < 0 an upward-rounded root gives a downward power.
  mpfr_rootn_ui(r.lo_, for_lo, q, p >= 0 ? MPFR_RNDD : MPFR_RNDU);
  mpfr_pow_si(r.lo_, r.lo_, p, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, for_hi, q, p >= 0 ? MPFR_RNDU : MPFR_RNDD);
  mpfr_pow_si(r.hi_, r.hi_, p, MPFR_RNDU);
  return r;
}

Interval Interval::clamp_nonnegative() const {
  Interval r(*this);
  if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
  if (mpfr_sgn(r.hi_) < 0) mpfr_set_zero(r.hi_, 1);
  return r;
}

namespace {

Rat to_dyadic(const mpfr_t x, unsigned frac_bits, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(x));
  mpfr_mul_2ui(t, x, frac_bits, MPFR_RNDN);  // exact
  Int z;
  mpfr_get_z(z.get_mpz_t(), t, rnd);
  mpfr_clear(t);
  Int den = 1;
  den <<= frac_bits;
  Rat r(z, den);
  r.canonicalize();
  return r;
}

}  // namespace

Rat Interval::upper_dyadic(unsigned frac_bits) const { return to_dyadic(hi_, frac_bits, MPFR_RNDU); }
Rat Interval::lower_dyadic(unsigned frac_bits) const { return to_dyadic(lo_, frac_bits, MPFR_RNDD); }

double Interval::mid() const {
  return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
}

}  // namespace siegel
