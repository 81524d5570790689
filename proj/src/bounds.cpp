#include "siegel/bounds.hpp"

#include <cstdio>
#include <stdexcept>

namespace siegel {

std::string BoundValue::display() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", approx);
  return buf;
}

void BoundParams::validate() const {
  if (!(1 <= s && s < w && w <= N)) throw std::invalid_argument("bound parameters need 1 <= s < w <= N");
  if (vs.empty()) throw std::invalid_argument("bound parameters need M >= 1");
  if (height_sq_W <= 0) throw std::invalid_argument("heights must be positive");
  for (const auto& v : vs) {
    if (v.dim < 1 || v.dim > s) throw std::invalid_argument("each subspace dimension must lie in [1, s]");
    if (v.height_sq <= 0) throw std::invalid_argument("heights must be positive");
  }
}

namespace {

class Eval {
 public:
  explicit Eval(const BoundOptions& opts) : opts_(opts), prec_(working_precision(opts.frac_bits)) {}

  Interval num(const Rat& x) const { return Interval(x, prec_); }
  Interval num(const Int& x) const { return Interval(x, prec_); }
  Interval num(long x) const { return Interval(x, prec_); }
  /// x^(p/q) for positive rational x.
  Interval pow(const Rat& x, long p, unsigned long q = 1) const { return num(x).pow(p, q); }
  Interval pow2(long p, unsigned long q = 1) const { return pow(Rat(2), p, q); }

  BoundValue finish(const char* formula, const Interval& x) const {
    return {formula, x.upper_dyadic(opts_.frac_bits), x.mid()};
  }
  unsigned frac_bits() const { return opts_.frac_bits; }

 private:
  BoundOptions opts_;
  mpfr_prec_t prec_;
};

void check_dims(int N, int w) {
  if (!(1 <= w && w <= N)) throw std::invalid_argument("bounds need 1 <= w <= N");
}

Interval constant_C(const Eval& ev, const FieldDescriptor& f, int N, int w, int s) {
  const long d = f.d;
  const long l = N / 2;
  const unsigned long ws = static_cast<unsigned long>(w - s);
  Int wdw;
  mpz_ui_pow_ui(wdw.get_mpz_t(), static_cast<unsigned long>(w * d), static_cast<unsigned long>(w));
  const Int b = binomial(static_cast<unsigned long>(N * d), static_cast<unsigned long>(l * d));
  return ev.pow2(w * (d + 3)) * ev.pow(f.abs_disc, w, 2) * ev.num(wdw).pow(1, ws) *
         ev.num(b).pow(1, static_cast<unsigned long>(2 * d) * ws);
}

// M^(1/((w-s)d+1)) + (sum)^(1/((w-s)d)).
Interval brace(const Eval& ev, const Interval& sum, long M, int w, int s, long d) {
  const unsigned long e = static_cast<unsigned long>((w - s) * d);
  return sum.pow(1, e) + ev.num(M).pow(1, e + 1);
}

}  // namespace

BoundValue siegel_bound(const FieldDescriptor& field, int N, int w, const Rat& height_sq_W, const BoundOptions& opts) {
  check_dims(N, w);
  if (height_sq_W <= 0) throw std::invalid_argument("heights must be positive");
  Eval ev(opts);
  Interval v = (ev.num(N) * ev.pow(field.abs_disc, 1, static_cast<unsigned long>(field.d))).sqrt() *
               ev.pow(height_sq_W, 1, 2 * static_cast<unsigned long>(w));
  return ev.finish("siegel", v);
}

BoundValue main_constant(const FieldDescriptor& field, int N, int w, int s, const BoundOptions& opts) {
  if (!(1 <= s && s < w && w <= N)) throw std::invalid_argument("bound parameters need 1 <= s < w <= N");
  Eval ev(opts);
  return ev.finish("main_constant", constant_C(ev, field, N, w, s));
}

BoundValue main_bound(const BoundParams& p, const BoundOptions& opts) {
  p.validate();
  Eval ev(opts);
  const long d = p.field.d;
  Interval sum = ev.num(0L);
  for (const auto& v : p.vs) sum = sum + ev.pow(v.height_sq, -d, 2);
  Interval value = constant_C(ev, p.field, p.N, p.w, p.s) * ev.pow(p.height_sq_W, d, 2) *
                   brace(ev, sum, p.M(), p.w, p.s, d);
  return ev.finish("main", value);
}

TheoremRadii theorem31_R1_R2(const BoundParams& p, const BoundOptions& opts) {
  p.validate();
  Eval ev(opts);
  const long d = p.field.d, r2 = p.field.r2, w = p.w, N = p.N;
  const Rat& D = p.field.abs_disc;

  Int wdw;
  mpz_ui_pow_ui(wdw.get_mpz_t(), static_cast<unsigned long>(w * d), static_cast<unsigned long>(w));
  // 4^((w(2d-r2)+1)/(2d)) = 2^((w(2d-r2)+1)/d)
  Interval c1 = ev.pow2(w * (2 * d - r2) + 1, static_cast<unsigned long>(d)) * ev.num(wdw) *
                ev.pow(D, w, 2 * static_cast<unsigned long>(d));
  Interval first = (c1 * ev.pow(p.height_sq_W, 1, 2)).pow(1, static_cast<unsigned long>(p.w - p.s)) + ev.num(1L);

  Interval sum = ev.num(0L);
  for (const auto& v : p.vs) {
    const long li = v.dim;
    const Int b = binomial(static_cast<unsigned long>(N * d), static_cast<unsigned long>(li * d));
    Interval c2 = ev.pow2(li * r2) * ev.num(b).pow(1, 2) * ev.pow(D, -li, 2);
    sum = sum + c2 * ev.pow(v.height_sq, -d, 2);
  }
  Interval r1 = first * brace(ev, sum, p.M(), p.w, p.s, d);
  Interval r2v = ev.pow2(w * (d - 2 * r2), 2) * ev.num(w * d) * ev.pow(D, w, 2) * ev.pow(p.height_sq_W, d, 2);
  return {ev.finish("R1", r1), ev.finish("R2", r2v)};
}

BoundValue rational_case_bound(int N, int w, int l, const Rat& height_sq_W, const std::vector<Rat>& height_sq_V,
                               const BoundOptions& opts) {
  check_dims(N, w);
  if (l < 0 || l > N) throw std::invalid_argument("l must lie in [0, N]");
  if (height_sq_V.empty()) throw std::invalid_argument("bound parameters need M >= 1");
  if (height_sq_W <= 0) throw std::invalid_argument("heights must be positive");
  Eval ev(opts);
  Int c;
  mpz_ui_pow_ui(c.get_mpz_t(), 16UL * static_cast<unsigned long>(w), static_cast<unsigned long>(w));
  Interval sum = ev.num(0L);
  for (const auto& h : height_sq_V) {
    if (h <= 0) throw std::invalid_argument("heights must be positive");
    sum = sum + ev.pow(h, -1, 2);
  }
  const long M = static_cast<long>(height_sq_V.size());
  Interval value = ev.num(c) * ev.num(binomial(N, l)).pow(1, 2) * ev.pow(height_sq_W, 1, 2) *
                   (sum + ev.num(M).pow(1, 2));
  return ev.finish("n10", value);
}

BoundValue inverse_siegel_bound(const FieldDescriptor& field, int N, long M, const BoundOptions& opts) {
  if (M < 1 || N < 2) throw std::invalid_argument("inverse bound needs M >= 1 and N >= 2");
  Eval ev(opts);
  const long d = field.d;
  const Int b = binomial(static_cast<unsigned long>(N * d), static_cast<unsigned long>(N * d - d));
  Interval value = ev.pow2(N * (d + 3) + 1) * ev.pow(Rat(N * d) * field.abs_disc, N, 2) *
                   ev.num(b).pow(1, 2 * static_cast<unsigned long>(d)) *
                   ev.num(M).pow(1, static_cast<unsigned long>(d));
  return ev.finish("n11", value);
}

BoundValue extension_bound(const FieldDescriptor& field, int N, int w, const Rat& height_sq_W, const Rat& height_sq_V,
                           const BoundOptions& opts) {
  if (w < 2) throw std::invalid_argument("extension bound needs w >= 2");
  check_dims(N, w);
  if (height_sq_W <= 0 || height_sq_V <= 0) throw std::invalid_argument("heights must be positive");
  Eval ev(opts);
  const long d = field.d;
  Interval value = constant_C(ev, field, N, w, w - 1) * ev.pow(height_sq_W, d, 2) *
                   (ev.num(1L) + ev.pow(height_sq_V, -1, 2));
  return ev.finish("extend", value);
}

AdelicBoundValue adelic_bounds(const FieldDescriptor& field, int N, int w, const Rat& height_sq_W, const Rat& R_sq,
                               const BoundOptions& opts) {
  check_dims(N, w);
  if (height_sq_W <= 0 || R_sq <= 0) throw std::invalid_argument("heights and R must be positive");
  Eval ev(opts);
  const long d = field.d, r2 = field.r2;
  const long wd = w * d;
  Interval R = ev.num(R_sq).sqrt();
  Interval scale = ev.pow2(w * (2 * r2 - d) + 3, 2) * R / (ev.pow(field.abs_disc, w, 2) * ev.pow(height_sq_W, d, 2));
  Interval cube = ev.pow2(3, 2) * R;
  Interval one = ev.num(1L);

  AdelicBoundValue out;
  Interval a = scale / ev.num(wd) - one;
  Interval b = cube / ev.num(wd) - one;
  if (a.positive() && (wd == 1 || b.positive())) {
    Interval lower = wd == 1 ? a : a * b.pow(wd - 1);
    out.lower = lower.lower_dyadic(ev.frac_bits());
    out.lower_approx = lower.mid();
  } else {
    out.lower = 0;
  }
  const Int bin = binomial(static_cast<unsigned long>(N * d), static_cast<unsigned long>(wd));
  Interval upper = (ev.num(bin).sqrt() * scale + one) * (cube + one).pow(wd - 1);
  out.upper = upper.upper_dyadic(ev.frac_bits());
  out.upper_approx = upper.mid();
  return out;
}

}  // namespace siegel
