#pragma once

// Heights over Q and Q(i). Every height is carried as its exact square; see
// HeightValue. Points of K^N are vectors of Gaussian rationals (imaginary parts
// must vanish over Q).

#include "siegel/field.hpp"
#include "siegel/gaussian.hpp"
#include "siegel/linalg.hpp"

#include <optional>
#include <vector>

namespace siegel {

using KVector = std::vector<GaussRat>;
using OVector = std::vector<GaussInt>;  // point of O_K^N

struct HeightValue {
  Rat sq;  // square of the height

  double approx() const;  // sqrt(sq) for display only
  friend bool operator==(const HeightValue& a, const HeightValue& b) { return a.sq == b.sq; }
  friend bool operator<(const HeightValue& a, const HeightValue& b) { return a.sq < b.sq; }
  friend bool operator<=(const HeightValue& a, const HeightValue& b) { return a.sq <= b.sq; }
};

/// Clears denominators, divides out the content and unit-normalizes the first
/// nonzero coordinate. Throws on the zero vector.
OVector canonical_integral(const KVector& x, const FieldDescriptor& field);

HeightValue height_H(const KVector& x, const FieldDescriptor& field);
HeightValue height_Hcal(const KVector& x, const FieldDescriptor& field);
HeightValue height_H(const OVector& x, const FieldDescriptor& field);
HeightValue height_Hcal(const OVector& x, const FieldDescriptor& field);

/// A subspace of K^N in canonical form: saturated HNF basis of V ∩ O_K^N,
/// primitive Grassmann coordinates and the squared height.
class Subspace {
 public:
  /// Span of the given vectors (each of length N); dependent vectors are allowed.
  static Subspace from_basis(const FieldDescriptor& field, const std::vector<KVector>& vectors);
  /// Common nullspace of the given linear forms. Throws if the nullspace is zero.
  static Subspace from_constraints(const FieldDescriptor& field, std::size_t ambient,
                                   const std::vector<KVector>& rows);
  /// Span of the columns of an integral matrix.
  static Subspace from_integral(const FieldDescriptor& field, const GaussMatrix& columns);
  /// The whole space K^N.
  static Subspace full(const FieldDescriptor& field, std::size_t ambient);

  const FieldDescriptor& field() const { return field_; }
  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const GaussMatrix& basis() const { return basis_; }
  std::vector<OVector> basis_vectors() const;
  const GrassmannVector<GaussInt>& grassmann() const { return gr_; }
  const HeightValue& height() const { return height_; }
  /// Integral (N - dim) x N matrix whose nullspace is this subspace.
  const GaussMatrix& constraints() const { return constraints_; }

  bool contains(const OVector& x) const;
  bool contains(const KVector& x) const;
  bool contains(const Subspace& other) const;

  /// Intersection; std::nullopt when it is the zero subspace.
  std::optional<Subspace> intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.basis_ == b.basis_;
  }

 private:
  Subspace() = default;
  static Subspace build(const FieldDescriptor& field, const GaussMatrix& integral_columns);

  FieldDescriptor field_;
  GaussMatrix basis_;
  GrassmannVector<GaussInt> gr_;
  HeightValue height_;
  GaussMatrix constraints_;
};

HeightValue subspace_height(const Subspace& V);

/// Hyperplane {x : sum q_i x_i = 0}.
Subspace nullspace_of_form(const FieldDescriptor& field, const KVector& q);

struct DualityReport {
  bool gamma_found = false;
  GaussRat gamma;
  HeightValue basis_height;       // H(Gr(X))
  HeightValue constraint_height;  // H(Gr(A))
  bool heights_agree = false;
};

/// Checks det(X_I) = (-1)^{eps(I')} gamma det(_{I'}A) for all I with one
/// gamma, eps(I') the sum of the 1-based indices in the complement I'.
/// X is N x J, A is (N-J) x N. Throws std::invalid_argument("not a dual pair")
/// if A X != 0 or either matrix is rank deficient.
DualityReport check_duality(const FieldDescriptor& field, const GaussRatMatrix& X, const GaussRatMatrix& A);

/// Product over all places of |a|_v, computed from the local normalizations.
/// Over Q the product itself, over Q(i) its square. Equals 1 for a != 0.
Rat product_formula_check(const GaussRat& a, const FieldDescriptor& field);

/// Conversions between Gaussian and plain integer matrices (Q subspaces are
/// stored with zero imaginary parts).
GaussMatrix to_gauss(const IntMatrix& m);
KVector to_kvector(const OVector& x);

}  // namespace siegel
