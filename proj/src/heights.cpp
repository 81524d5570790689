#include "siegel/heights.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace siegel {

FieldDescriptor FieldDescriptor::symbolic(int d, int r1, int r2, const Rat& abs_disc) {
  if (d < 1 || r1 < 0 || r2 < 0 || d != r1 + 2 * r2)
    throw std::invalid_argument("field invariants must satisfy d = r1 + 2 r2 with d >= 1");
  if (abs_disc <= 0) throw std::invalid_argument("|D_K| must be positive");
  return {FieldKind::Symbolic, d, r1, r2, abs_disc};
}

std::string FieldDescriptor::label() const {
  switch (kind) {
    case FieldKind::Q: return "Q";
    case FieldKind::QI: return "QI";
    default: return "SYMBOLIC";
  }
}

void require_exact(const FieldDescriptor& field) {
  if (!field.exact()) throw std::invalid_argument("exact arithmetic unsupported");
}

double HeightValue::approx() const { return std::sqrt(sq.get_d()); }

GaussMatrix to_gauss(const IntMatrix& m) { return convert<GaussInt>(m); }

KVector to_kvector(const OVector& x) { return KVector(x.begin(), x.end()); }

namespace {

void require_field_vector(const KVector& x, const FieldDescriptor& field) {
  require_exact(field);
  if (field.kind == FieldKind::Q)
    for (const auto& c : x)
      if (!c.is_real()) throw std::invalid_argument("non-rational coordinate in a vector over Q");
}

OVector clear_denominators(const KVector& x) {
  Int l(1);
  for (const auto& c : x) {
    l = lcm_of(l, c.re.get_den());
    l = lcm_of(l, c.im.get_den());
  }
  OVector out;
  out.reserve(x.size());
  for (const auto& c : x) {
    Rat re = c.re * l, im = c.im * l;
    out.emplace_back(re.get_num(), im.get_num());
  }
  return out;
}

bool is_zero_vector(const OVector& x) {
  for (const auto& c : x)
    if (!c.is_zero()) return false;
  return true;
}

// Heights from an integral representative: the finite places contribute
// 1/N(content) to the square.
HeightValue integral_height(const OVector& x, bool euclidean) {
  if (x.empty() || is_zero_vector(x)) throw std::invalid_argument("height of the zero vector");
  GaussInt g = content_of(x);
  Int acc(0);
  for (const auto& c : x) {
    Int n = c.norm();
    if (euclidean)
      acc += n;
    else if (n > acc)
      acc = n;
  }
  Rat sq(acc, g.norm());
  sq.canonicalize();
  return {sq};
}

GaussMatrix ring_saturate(const FieldDescriptor& field, const GaussMatrix& cols) {
  if (field.kind == FieldKind::Q) return to_gauss(saturate(real_part(cols)));
  return saturate(cols);
}

GaussMatrix ring_kernel(const FieldDescriptor& field, const GaussMatrix& m) {
  if (field.kind == FieldKind::Q) return to_gauss(kernel(real_part(m)));
  return kernel(m);
}

GrassmannVector<GaussInt> ring_minors(const FieldDescriptor& field, const GaussMatrix& basis) {
  if (field.kind == FieldKind::Q) {
    GrassmannVector<Int> g = maximal_minors(real_part(basis));
    GrassmannVector<GaussInt> out;
    out.ambient = g.ambient;
    out.dim = g.dim;
    out.content = GaussInt(g.content);
    for (const auto& c : g.coords) out.coords.emplace_back(c);
    return out;
  }
  return maximal_minors(basis);
}

GaussMatrix integral_rows(const GaussRatMatrix& rows) {
  return clear_column_denominators(rows.transpose()).transpose();
}

}  // namespace

OVector canonical_integral(const KVector& x, const FieldDescriptor& field) {
  require_field_vector(x, field);
  OVector v = clear_denominators(x);
  if (is_zero_vector(v)) throw std::invalid_argument("zero vector has no canonical representative");
  return primitive_part(v);
}

HeightValue height_H(const KVector& x, const FieldDescriptor& field) {
  require_field_vector(x, field);
  return integral_height(clear_denominators(x), false);
}

HeightValue height_Hcal(const KVector& x, const FieldDescriptor& field) {
  require_field_vector(x, field);
  return integral_height(clear_denominators(x), true);
}

HeightValue height_H(const OVector& x, const FieldDescriptor& field) {
  return height_H(to_kvector(x), field);
}

HeightValue height_Hcal(const OVector& x, const FieldDescriptor& field) {
  return height_Hcal(to_kvector(x), field);
}

Subspace Subspace::build(const FieldDescriptor& field, const GaussMatrix& integral_columns) {
  require_exact(field);
  if (field.kind == FieldKind::Q) (void)real_part(integral_columns);
  Subspace v;
  v.field_ = field;
  v.basis_ = ring_saturate(field, integral_columns);
  v.gr_ = ring_minors(field, v.basis_);
  Int h(0);
  for (const auto& c : v.gr_.coords) h += c.norm();
  v.height_ = {Rat(h)};
  v.constraints_ = ring_kernel(field, v.basis_.transpose()).transpose();
  if (v.constraints_.rows() == 0) v.constraints_ = GaussMatrix(0, v.basis_.rows());
  return v;
}

Subspace Subspace::from_basis(const FieldDescriptor& field, const std::vector<KVector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("empty basis");
  const std::size_t n = vectors.front().size();
  if (n == 0) throw std::invalid_argument("ambient dimension must be positive");
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("basis vectors of different lengths");
    require_field_vector(v, field);
  }
  GaussMatrix cols = clear_column_denominators(GaussRatMatrix::from_columns(vectors, n));
  if (cols.is_zero()) throw std::invalid_argument("basis spans the zero subspace");
  return build(field, cols);
}

Subspace Subspace::from_constraints(const FieldDescriptor& field, std::size_t ambient,
                                    const std::vector<KVector>& rows) {
  if (ambient == 0) throw std::invalid_argument("ambient dimension must be positive");
  for (const auto& r : rows) {
    if (r.size() != ambient) throw std::invalid_argument("constraint row of wrong length");
    require_field_vector(r, field);
  }
  if (rows.empty()) return full(field, ambient);
  GaussMatrix A = integral_rows(GaussRatMatrix::from_rows(rows, ambient));
  GaussMatrix K = ring_kernel(field, A);
  if (K.cols() == 0) throw std::invalid_argument("constraints define the zero subspace");
  return build(field, K);
}

Subspace Subspace::from_integral(const FieldDescriptor& field, const GaussMatrix& columns) {
  if (columns.cols() == 0 || columns.is_zero()) throw std::invalid_argument("basis spans the zero subspace");
  return build(field, columns);
}

Subspace Subspace::full(const FieldDescriptor& field, std::size_t ambient) {
  return build(field, GaussMatrix::identity(ambient));
}

std::vector<OVector> Subspace::basis_vectors() const {
  std::vector<OVector> out;
  for (std::size_t j = 0; j < basis_.cols(); ++j) out.push_back(basis_.column(j));
  return out;
}

bool Subspace::contains(const OVector& x) const {
  if (x.size() != ambient()) throw std::invalid_argument("point of wrong dimension");
  for (std::size_t i = 0; i < constraints_.rows(); ++i) {
    GaussInt acc(0);
    for (std::size_t j = 0; j < x.size(); ++j) acc += constraints_(i, j) * x[j];
    if (!acc.is_zero()) return false;
  }
  return true;
}

bool Subspace::contains(const KVector& x) const {
  if (x.size() != ambient()) throw std::invalid_argument("point of wrong dimension");
  require_field_vector(x, field_);
  return contains(clear_denominators(x));
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) return false;
  for (const auto& b : other.basis_vectors())
    if (!contains(b)) return false;
  return true;
}

std::optional<Subspace> Subspace::intersect(const Subspace& other) const {
  if (!(other.field_ == field_) || other.ambient() != ambient())
    throw std::invalid_argument("intersection of subspaces of different spaces");
  GaussMatrix stacked = constraints_.vcat(other.constraints_);
  GaussMatrix K = ring_kernel(field_, stacked);
  if (K.cols() == 0) return std::nullopt;
  return build(field_, K);
}

HeightValue subspace_height(const Subspace& V) { return V.height(); }

Subspace nullspace_of_form(const FieldDescriptor& field, const KVector& q) {
  return Subspace::from_constraints(field, q.size(), {q});
}

DualityReport check_duality(const FieldDescriptor& field, const GaussRatMatrix& X, const GaussRatMatrix& A) {
  require_exact(field);
  const std::size_t N = X.rows(), J = X.cols();
  if (J == 0 || J > N || A.cols() != N || A.rows() != N - J)
    throw std::invalid_argument("check_duality needs X of size N x J and A of size (N-J) x N");
  if (field.kind == FieldKind::Q) {
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < J; ++j)
        if (!X(i, j).is_real()) throw std::invalid_argument("non-rational entry over Q");
      for (std::size_t r = 0; r < A.rows(); ++r)
        if (!A(r, i).is_real()) throw std::invalid_argument("non-rational entry over Q");
    }
  }
  if (A.rows() > 0 && !(A * X).is_zero()) throw std::invalid_argument("not a dual pair");

  KVector gx, ga;
  std::vector<int> signs;
  for (const auto& I : subsets_lex(N, J)) {
    std::vector<std::size_t> comp;
    std::size_t eps = 0;
    for (std::size_t i = 0, k = 0; i < N; ++i) {
      if (k < I.size() && I[k] == i) {
        ++k;
        continue;
      }
      comp.push_back(i);
      eps += i + 1;
    }
    gx.push_back(det_field(X.select_rows(I)));
    ga.push_back(comp.empty() ? GaussRat(1) : det_field(A.select_cols(comp)));
    signs.push_back(eps % 2 == 0 ? 1 : -1);
  }
  bool x_zero = true, a_zero = true;
  for (std::size_t k = 0; k < gx.size(); ++k) {
    x_zero = x_zero && gx[k].is_zero();
    a_zero = a_zero && ga[k].is_zero();
  }
  if (x_zero || a_zero) throw std::invalid_argument("not a dual pair");

  DualityReport rep;
  for (std::size_t k = 0; k < gx.size(); ++k) {
    if (ga[k].is_zero()) continue;
    rep.gamma = gx[k] / (GaussRat(signs[k]) * ga[k]);
    break;
  }
  rep.gamma_found = !rep.gamma.is_zero();
  for (std::size_t k = 0; k < gx.size() && rep.gamma_found; ++k)
    if (!(gx[k] == GaussRat(signs[k]) * rep.gamma * ga[k])) rep.gamma_found = false;
  rep.basis_height = height_Hcal(gx, field);
  rep.constraint_height = height_Hcal(ga, field);
  rep.heights_agree = rep.basis_height == rep.constraint_height;
  return rep;
}

namespace {

// Pollard-Brent rho; returns a proper factor of the odd composite n, or 0
// when the iteration cap is reached.
Int rho_factor(const Int& n) {
  for (unsigned long c = 1; c <= 20; ++c) {
    Int x = 2, y = 2, q = 1, g = 1, ys, t;
    auto f = [&](Int& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    for (unsigned long r = 1; g == 1 && r <= (1ul << 22); r *= 2) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) f(y);
      for (unsigned long k = 0; k < r && g == 1; k += 128) {
        ys = y;
        for (unsigned long i = 0; i < std::min(128ul, r - k); ++i) {
          f(y);
          t = abs_of(Int(x - y));
          q = q * t % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        f(ys);
        t = abs_of(Int(x - ys));
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

// Small primes by trial division, the rest by rho. Throws if a composite
// cofactor resists.
std::map<Int, unsigned> factor_positive(Int n) {
  std::map<Int, unsigned> out;
  for (unsigned long p = 2; p < 65536 && mpz_cmp_ui(n.get_mpz_t(), p * p) >= 0; p += p == 2 ? 1 : 2) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++out[Int(p)];
    }
  }
  std::vector<Int> pending;
  if (n > 1) pending.push_back(n);
  while (!pending.empty()) {
    Int m = pending.back();
    pending.pop_back();
    if (m < Int(65536) * 65536 || mpz_probab_prime_p(m.get_mpz_t(), 40) != 0) {
      ++out[m];
      continue;
    }
    Int g = rho_factor(m);
    if (g == 0) throw std::domain_error("element too large to factor");
    pending.push_back(g);
    pending.push_back(m / g);
  }
  return out;
}

Int pow_mod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Gaussian prime above a rational prime p = 1 mod 4.
GaussInt split_prime(const Int& p) {
  Int e = (p - 1) / 4;
  for (Int c = 2;; ++c) {
    Int t = pow_mod(c, e, p);
    if ((t * t + 1) % p == 0) return gcd(GaussInt(p), GaussInt(t, Int(1)));
  }
}

long valuation(GaussInt a, const GaussInt& pi) {
  long v = 0;
  while (!a.is_zero() && divides(pi, a)) {
    a = div_exact(a, pi);
    ++v;
  }
  return v;
}

struct LocalPlace {
  GaussInt pi;
  Int p;
  int e;    // ramification index
  int d_v;  // local degree
};

std::vector<LocalPlace> places_above(const Int& p) {
  if (p == 2) return {{GaussInt(1, 1), p, 2, 2}};
  if (p % 4 == 3) return {{GaussInt(p), p, 1, 2}};
  GaussInt pi = split_prime(p);
  return {{pi, p, 1, 1}, {pi.conj(), p, 1, 1}};
}

}  // namespace

Rat product_formula_check(const GaussRat& a, const FieldDescriptor& field) {
  require_exact(field);
  if (a.is_zero()) throw std::invalid_argument("product formula needs a nonzero element");
  if (field.kind == FieldKind::Q) {
    if (!a.is_real()) throw std::invalid_argument("non-rational element over Q");
    Rat prod = abs_of(a.re);
    Int num = abs_of(Int(a.re.get_num())), den = a.re.get_den();
    for (const auto& [p, e] : factor_positive(num)) prod *= pow_of(Rat(p), -static_cast<long>(e));
    for (const auto& [p, e] : factor_positive(den)) prod *= pow_of(Rat(p), static_cast<long>(e));
    return prod;
  }
  // a = alpha / m with alpha in Z[i], m a positive integer.
  Int m = lcm_of(a.re.get_den(), a.im.get_den());
  Rat re = a.re * m, im = a.im * m;
  GaussInt alpha(re.get_num(), im.get_num());
  const int d = field.d;
  // Archimedean place: squared |a|_v = ||a||^{2 d_v / d} = N(a) since d_v = d = 2.
  Rat prod = a.norm();
  std::map<Int, unsigned> primes = factor_positive(alpha.norm());
  for (const auto& [p, e] : factor_positive(m)) primes[p] += e;
  for (const auto& [p, unused] : primes) {
    for (const auto& place : places_above(p)) {
      long v = valuation(alpha, place.pi) - valuation(GaussInt(m), place.pi);
      // ||a||_v = p^{-v/e}; squared |a|_v = ||a||_v^{2 d_v / d}.
      long num = -2 * v * place.d_v;
      long den = static_cast<long>(place.e) * d;
      if (num % den != 0) throw std::logic_error("non-integral local exponent");
      prod *= pow_of(Rat(p), num / den);
    }
  }
  return prod;
}

}  // namespace siegel
