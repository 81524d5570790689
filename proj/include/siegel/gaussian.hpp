#pragma once

#include "siegel/arith.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace siegel {

/// Element of Z[i].
struct GaussInt {
  Int re{0}, im{0};

  GaussInt() = default;
  GaussInt(Int r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
  GaussInt(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  Int norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussInt conj() const { return {re, -im}; }

  GaussInt operator-() const { return {-re, -im}; }
  GaussInt& operator+=(const GaussInt& o) { re += o.re; im += o.im; return *this; }
  GaussInt& operator-=(const GaussInt& o) { re -= o.re; im -= o.im; return *this; }
  GaussInt& operator*=(const GaussInt& o) {
    Int r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
  friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
  friend GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }
  friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
};

/// Element of Q(i).
struct GaussRat {
  Rat re{0}, im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRat(const GaussInt& z) : re(z.re), im(z.im) {}  // NOLINT(google-explicit-constructor)

  Rat norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussRat conj() const { return {re, -im}; }
  GaussRat inverse() const;

  GaussRat operator-() const { return {-re, -im}; }
  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

std::ostream& operator<<(std::ostream& os, const GaussInt& z);
std::ostream& operator<<(std::ostream& os, const GaussRat& z);
std::string to_string(const GaussInt& z);

/// Quotient of a by b rounded to the nearest Gaussian integer (ties toward
/// +infinity per component); the remainder has norm at most N(b)/2.
GaussInt div_round(const GaussInt& a, const GaussInt& b);

/// Exact quotient; throws std::domain_error when b does not divide a.
GaussInt div_exact(const GaussInt& a, const GaussInt& b);
bool divides(const GaussInt& b, const GaussInt& a);

/// Unit u in {1, i, -1, -i} such that u*z has re > 0 and im >= 0.
/// Returns 1 for z = 0.
GaussInt unit_normalizer(const GaussInt& z);

/// Greatest common divisor, unit-normalized (re > 0, im >= 0) or zero.
GaussInt gcd(const GaussInt& a, const GaussInt& b);

/// Quadrant index of z != 0: 0 for (re > 0, im >= 0), then counterclockwise.
int quadrant(const GaussInt& z);

/// Total order used for deterministic tie-breaking: norm first, then
/// quadrant, then (re, im).
std::strong_ordering scalar_order(const GaussInt& a, const GaussInt& b);

}  // namespace siegel
