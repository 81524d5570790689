#include "siegel/gaussian.hpp"

#include <sstream>
#include <stdexcept>

namespace siegel {

namespace {

// round(p/q) for q > 0, halves rounded up.
Int round_div(const Int& p, const Int& q) {
  Int twice = 2 * p + q;
  Int two_q = 2 * q;
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), two_q.get_mpz_t());
  return r;
}

}  // namespace

GaussRat GaussRat::inverse() const {
  Rat n = norm();
  if (n == 0) throw std::domain_error("division by zero in Q(i)");
  return {re / n, -im / n};
}

std::ostream& operator<<(std::ostream& os, const GaussInt& z) {
  if (z.im == 0) return os << z.re;
  return os << "(" << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
}

std::ostream& operator<<(std::ostream& os, const GaussRat& z) {
  if (z.im == 0) return os << to_string(z.re);
  return os << "(" << to_string(z.re) << (z.im < 0 ? "" : "+") << to_string(z.im) << "i)";
}

std::string to_string(const GaussInt& z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

GaussInt div_round(const GaussInt& a, const GaussInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero in Z[i]");
  GaussInt num = a * b.conj();
  Int n = b.norm();
  return {round_div(num.re, n), round_div(num.im, n)};
}

bool divides(const GaussInt& b, const GaussInt& a) {
  if (b.is_zero()) return a.is_zero();
  GaussInt num = a * b.conj();
  Int n = b.norm();
  return mpz_divisible_p(num.re.get_mpz_t(), n.get_mpz_t()) &&
         mpz_divisible_p(num.im.get_mpz_t(), n.get_mpz_t());
}

GaussInt div_exact(const GaussInt& a, const GaussInt& b) {
  if (!divides(b, a)) throw std::domain_error("inexact Gaussian division");
  GaussInt num = a * b.conj();
  Int n = b.norm();
  Int re, im;
  mpz_divexact(re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
  return {re, im};
}

int quadrant(const GaussInt& z) {
  if (z.re > 0 && z.im >= 0) return 0;
  if (z.re <= 0 && z.im > 0) return 1;
  if (z.re < 0 && z.im <= 0) return 2;
  return 3;
}

GaussInt unit_normalizer(const GaussInt& z) {
  if (z.is_zero()) return GaussInt(1);
  switch (quadrant(z)) {
    case 0: return GaussInt(1);
    case 1: return GaussInt(0, -1);
    case 2: return GaussInt(-1);
    default: return GaussInt(0, 1);
  }
}

GaussInt gcd(const GaussInt& a, const GaussInt& b) {
  GaussInt x = a, y = b;
  while (!y.is_zero()) {
    GaussInt r = x - div_round(x, y) * y;
    x = std::move(y);
    y = std::move(r);
  }
  return x * unit_normalizer(x);
}

std::strong_ordering scalar_order(const GaussInt& a, const GaussInt& b) {
  Int na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb ? std::strong_ordering::less : std::strong_ordering::greater;
  if (na == 0) return std::strong_ordering::equal;
  int qa = quadrant(a), qb = quadrant(b);
  if (qa != qb) return qa <=> qb;
  if (a.re != b.re) return a.re < b.re ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.im != b.im) return a.im < b.im ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace siegel
