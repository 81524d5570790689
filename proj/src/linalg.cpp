#include "siegel/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace siegel {

namespace {

// Euclidean-ring primitives for Int and GaussInt.

bool is_zero(const Int& a) { return a == 0; }
bool is_zero(const GaussInt& a) { return a.is_zero(); }

Int size_of(const Int& a) { return abs_of(a); }
Int size_of(const GaussInt& a) { return a.norm(); }

Int unit_of(const Int& a) { return a < 0 ? Int(-1) : Int(1); }
GaussInt unit_of(const GaussInt& a) { return unit_normalizer(a); }

Int inverse_unit(const Int& u) { return u; }
GaussInt inverse_unit(const GaussInt& u) { return u.conj(); }

Int euclid_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
GaussInt euclid_quotient(const GaussInt& a, const GaussInt& b) { return div_round(a, b); }

Int exact_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
GaussInt exact_quotient(const GaussInt& a, const GaussInt& b) { return div_exact(a, b); }

Int ring_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
GaussInt ring_gcd(const GaussInt& a, const GaussInt& b) { return gcd(a, b); }

template <class T>
void column_axpy(Matrix<T>& M, std::size_t target, const T& q, std::size_t source) {
  for (std::size_t r = 0; r < M.rows(); ++r) M(r, target) -= q * M(r, source);
}

template <class T>
void column_swap(Matrix<T>& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < M.rows(); ++r) std::swap(M(r, a), M(r, b));
}

template <class T>
void column_scale(Matrix<T>& M, std::size_t c, const T& u) {
  for (std::size_t r = 0; r < M.rows(); ++r) M(r, c) *= u;
}

template <class T>
Hnf<T> hnf_impl(const Matrix<T>& M) {
  Hnf<T> out{M, Matrix<T>::identity(M.cols()), {}};
  Matrix<T>& H = out.H;
  Matrix<T>& U = out.U;
  const std::size_t n = M.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < M.rows() && k < n; ++i) {
    bool nonzero_row = false;
    while (true) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j) {
        if (is_zero(H(i, j))) continue;
        if (best == n || size_of(H(i, j)) < size_of(H(i, best))) best = j;
      }
      if (best == n) break;
      nonzero_row = true;
      column_swap(H, k, best);
      column_swap(U, k, best);
      bool reduced = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (is_zero(H(i, j))) continue;
        T q = euclid_quotient(H(i, j), H(i, k));
        column_axpy(H, j, q, k);
        column_axpy(U, j, q, k);
        if (!is_zero(H(i, j))) reduced = false;
      }
      if (reduced) break;
    }
    if (!nonzero_row) continue;
    T u = unit_of(H(i, k));
    column_scale(H, k, u);
    column_scale(U, k, u);
    for (std::size_t j = 0; j < k; ++j) {
      T q = euclid_quotient(H(i, j), H(i, k));
      if (is_zero(q)) continue;
      column_axpy(H, j, q, k);
      column_axpy(U, j, q, k);
    }
    out.pivot_rows.push_back(i);
    ++k;
  }
  return out;
}

}  // namespace

template <class T>
Hnf<T> hnf(const Matrix<T>& M) {
  if (M.rows() == 0 || M.cols() == 0 || M.is_zero()) throw std::domain_error("rank zero");
  return hnf_impl(M);
}

template <class T>
Matrix<T> kernel(const Matrix<T>& M) {
  const std::size_t n = M.cols();
  if (M.rows() == 0 || M.is_zero()) return Matrix<T>::identity(n);
  Hnf<T> h = hnf_impl(M);
  std::vector<std::size_t> idx;
  for (std::size_t j = h.rank(); j < n; ++j) idx.push_back(j);
  return h.U.select_cols(idx);
}

template <class T>
std::size_t rank(const Matrix<T>& M) {
  if (M.rows() == 0 || M.cols() == 0 || M.is_zero()) return 0;
  return hnf_impl(M).rank();
}

template <class T>
Matrix<T> saturate(const Matrix<T>& B) {
  if (B.rows() == 0 || B.cols() == 0 || B.is_zero()) throw std::domain_error("zero span cannot be saturated");
  const std::size_t N = B.rows();
  const std::size_t r = rank(B);
  Matrix<T> dual = kernel(B.transpose());  // columns a with a^T B = 0
  Matrix<T> pure = dual.cols() == 0 ? Matrix<T>::identity(N) : kernel(dual.transpose());
  if (pure.cols() != r) throw std::logic_error("saturation rank mismatch");
  Hnf<T> h = hnf(pure);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < r; ++j) idx.push_back(j);
  return h.H.select_cols(idx);
}

template <class T>
T det_bareiss(Matrix<T> M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return T(1);
  T sign(1);
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(M(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(M(p, k))) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        M(i, j) = exact_quotient(v, prev);
      }
      M(i, k) = T(0);
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

template <class F>
F det_field(Matrix<F> M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  F det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == F(0)) ++p;
    if (p == n) return F(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
      det = -det;
    }
    det *= M(k, k);
    F inv = F(1) / M(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M(i, k) == F(0)) continue;
      F f = M(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) M(i, j) -= f * M(k, j);
    }
  }
  return det;
}

template <class T>
GrassmannVector<T> maximal_minors(const Matrix<T>& X) {
  const std::size_t N = X.rows(), J = X.cols();
  if (J == 0 || J > N) throw std::invalid_argument("maximal_minors needs 1 <= J <= N");
  GrassmannVector<T> g;
  g.ambient = N;
  g.dim = J;
  T content(0);
  for (const auto& I : subsets_lex(N, J)) {
    g.coords.push_back(det_bareiss(X.select_rows(I)));
    content = ring_gcd(content, g.coords.back());
  }
  if (is_zero(content)) throw std::domain_error("degenerate basis");
  T unit(1);
  bool first = true;
  for (auto& c : g.coords) {
    c = exact_quotient(c, content);
    if (first && !is_zero(c)) {
      unit = unit_of(c);
      first = false;
    }
  }
  for (auto& c : g.coords) c *= unit;
  g.content = content * inverse_unit(unit);
  return g;
}

template <class F>
std::vector<F> raw_minors(const Matrix<F>& X) {
  std::vector<F> out;
  for (const auto& I : subsets_lex(X.rows(), X.cols())) out.push_back(det_field(X.select_rows(I)));
  return out;
}

Rat gram_det(const RatMatrix& B) {
  Rat d = det_field(B.transpose() * B);
  if (d == 0) throw std::domain_error("rank-deficient basis in gram_det");
  return d;
}

bool solve_rational(const RatMatrix& A, const std::vector<Rat>& b, std::vector<Rat>& y) {
  const std::size_t n = A.rows(), r = A.cols();
  if (b.size() != n) throw std::invalid_argument("solve_rational dimension mismatch");
  RatMatrix aug(n, r + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug(i, j) = A(i, j);
    aug(i, r) = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r && row < n; ++c) {
    std::size_t p = row;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) continue;
    for (std::size_t j = 0; j <= r; ++j) std::swap(aug(row, j), aug(p, j));
    Rat inv = 1 / aug(row, c);
    for (std::size_t j = 0; j <= r; ++j) aug(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || aug(i, c) == 0) continue;
      Rat f = aug(i, c);
      for (std::size_t j = 0; j <= r; ++j) aug(i, j) -= f * aug(row, j);
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() != r) throw std::domain_error("solve_rational needs full column rank");
  for (std::size_t i = row; i < n; ++i)
    if (aug(i, r) != 0) return false;
  y.assign(r, Rat(0));
  for (std::size_t k = 0; k < pivot_col.size(); ++k) y[pivot_col[k]] = aug(k, r);
  return true;
}

Int content_of(const std::vector<Int>& v) {
  Int g(0);
  for (const auto& x : v) g = ring_gcd(g, x);
  return g;
}

GaussInt content_of(const std::vector<GaussInt>& v) {
  GaussInt g(0);
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

namespace {

template <class T>
std::vector<T> primitive_impl(const std::vector<T>& v) {
  T g = content_of(v);
  if (is_zero(g)) throw std::domain_error("primitive part of the zero vector");
  std::vector<T> out;
  out.reserve(v.size());
  T unit(1);
  bool first = true;
  for (const auto& x : v) {
    out.push_back(exact_quotient(x, g));
    if (first && !is_zero(out.back())) {
      unit = unit_of(out.back());
      first = false;
    }
  }
  for (auto& x : out) x *= unit;
  return out;
}

}  // namespace

std::vector<Int> primitive_part(const std::vector<Int>& v) { return primitive_impl(v); }
std::vector<GaussInt> primitive_part(const std::vector<GaussInt>& v) { return primitive_impl(v); }

IntMatrix clear_column_denominators(const RatMatrix& B) {
  IntMatrix out(B.rows(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    Int l(1);
    for (std::size_t i = 0; i < B.rows(); ++i) l = lcm_of(l, B(i, j).get_den());
    for (std::size_t i = 0; i < B.rows(); ++i) {
      Rat v = B(i, j) * l;
      out(i, j) = v.get_num();
    }
  }
  return out;
}

GaussMatrix clear_column_denominators(const GaussRatMatrix& B) {
  GaussMatrix out(B.rows(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    Int l(1);
    for (std::size_t i = 0; i < B.rows(); ++i) {
      l = lcm_of(l, B(i, j).re.get_den());
      l = lcm_of(l, B(i, j).im.get_den());
    }
    for (std::size_t i = 0; i < B.rows(); ++i) {
      Rat re = B(i, j).re * l, im = B(i, j).im * l;
      out(i, j) = GaussInt(re.get_num(), im.get_num());
    }
  }
  return out;
}

IntMatrix real_part(const GaussMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_real()) throw std::invalid_argument("matrix has non-real entries");
      out(i, j) = m(i, j).re;
    }
  return out;
}

template Hnf<Int> hnf(const Matrix<Int>&);
template Hnf<GaussInt> hnf(const Matrix<GaussInt>&);
template Matrix<Int> kernel(const Matrix<Int>&);
template Matrix<GaussInt> kernel(const Matrix<GaussInt>&);
template std::size_t rank(const Matrix<Int>&);
template std::size_t rank(const Matrix<GaussInt>&);
template Matrix<Int> saturate(const Matrix<Int>&);
template Matrix<GaussInt> saturate(const Matrix<GaussInt>&);
template Int det_bareiss(Matrix<Int>);
template GaussInt det_bareiss(Matrix<GaussInt>);
template Rat det_field(Matrix<Rat>);
template GaussRat det_field(Matrix<GaussRat>);
template GrassmannVector<Int> maximal_minors(const Matrix<Int>&);
template GrassmannVector<GaussInt> maximal_minors(const Matrix<GaussInt>&);
template std::vector<Rat> raw_minors(const Matrix<Rat>&);
template std::vector<GaussRat> raw_minors(const Matrix<GaussRat>&);

}  // namespace siegel
