#pragma once

// Exact linear algebra over Z, Z[i], Q and Q(i).
//
// Conventions: bases are stored as matrix columns. hnf() produces the
// column-style Hermite normal form in lower echelon shape: column k has its
// pivot in row pivot_rows[k], is zero above that row, pivots are unit-normalized
// (positive over Z, first quadrant over Z[i]), and every entry of a pivot row
// to the left of the pivot is reduced modulo the pivot ([0, p) over Z, nearest
// remainder over Z[i]).

#include "siegel/matrix.hpp"

#include <cstddef>
#include <vector>

namespace siegel {

template <class T>
struct Hnf {
  Matrix<T> H;  // M * U
  Matrix<T> U;  // unimodular
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

/// Column Hermite normal form, T in {Int, GaussInt}. Throws
/// std::domain_error("rank zero") for the zero matrix.
template <class T>
Hnf<T> hnf(const Matrix<T>& M);

/// Basis (as columns) of the integral kernel {x : M x = 0}; the result is
/// saturated and may have zero columns.
template <class T>
Matrix<T> kernel(const Matrix<T>& M);

template <class T>
std::size_t rank(const Matrix<T>& M);

/// Basis of span(B) intersected with the integral lattice, returned in HNF
/// with exactly rank(B) columns. Throws std::domain_error for a zero span.
template <class T>
Matrix<T> saturate(const Matrix<T>& B);

/// Determinant over an integral domain by fraction-free elimination.
template <class T>
T det_bareiss(Matrix<T> M);

/// Determinant over a field (Rat or GaussRat) by Gaussian elimination.
template <class F>
F det_field(Matrix<F> M);

template <class T>
struct GrassmannVector {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::vector<T> coords;  // primitive; index sets in lexicographic order
  T content{0};           // raw minors == content * coords
};

/// All dim x dim minors of the N x dim matrix X, lexicographic in the row
/// subset, reduced to primitive unit-normalized form. Throws
/// std::domain_error("degenerate basis") when X lacks full column rank.
template <class T>
GrassmannVector<T> maximal_minors(const Matrix<T>& X);

/// Unnormalized minors det(X_I) over a field, lexicographic in I.
template <class F>
std::vector<F> raw_minors(const Matrix<F>& X);

/// det(B^T B) exactly. Throws std::domain_error on rank deficiency.
Rat gram_det(const RatMatrix& B);

/// Solves A y = b over Q for a full-column-rank A. Returns false when the
/// system is inconsistent.
bool solve_rational(const RatMatrix& A, const std::vector<Rat>& b, std::vector<Rat>& y);

/// gcd of the entries and the unit making the first nonzero entry normalized.
Int content_of(const std::vector<Int>& v);
GaussInt content_of(const std::vector<GaussInt>& v);

/// Divides out the content and normalizes the first nonzero coordinate.
std::vector<Int> primitive_part(const std::vector<Int>& v);
std::vector<GaussInt> primitive_part(const std::vector<GaussInt>& v);

/// Scales each column of a rational matrix by the lcm of its denominators.
IntMatrix clear_column_denominators(const RatMatrix& B);
GaussMatrix clear_column_denominators(const GaussRatMatrix& B);

}  // namespace siegel
