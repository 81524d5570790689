#pragma once

// Lattice points of full-rank lattices in axis-aligned closed cubes
// C_R^n + z = {x : |x_i - z_i| <= R}.

#include "siegel/matrix.hpp"

#include <optional>
#include <vector>

namespace siegel {

/// Upper-triangular basis (columns) with positive diagonal, and a lower bound
/// c on the diagonal entries.
struct UTBasis {
  RatMatrix a;
  Rat c;

  /// Validates shape, triangularity and positivity. c defaults to the
  /// smallest diagonal entry; an explicit c must not exceed it.
  static UTBasis from_matrix(RatMatrix a, std::optional<Rat> c = std::nullopt);

  std::size_t n() const { return a.rows(); }
  Rat det() const;
  /// Every row attains its largest absolute value on the diagonal.
  bool is_cassels() const;
};

struct CubeSpec {
  Rat R;
  std::vector<Rat> z;  // empty means the origin

  static CubeSpec centered(Rat R) { return {std::move(R), {}}; }
};

struct EnumOptions {
  std::size_t points_cap = 1'000'000;
  unsigned threads = 1;
  bool count_only = false;
};

struct BoxEnumeration {
  Int count;
  /// Coefficient vectors k (point = A k), lexicographically sorted. Empty when
  /// count_only was requested or the count exceeded points_cap.
  std::vector<std::vector<Int>> coeffs;
  bool truncated = false;

  std::vector<std::vector<Rat>> points(const UTBasis& basis) const;
};

/// Upper-triangular basis of the lattice spanned by the columns of B, with
/// entries right of the diagonal reduced into [0, a_mm). Throws
/// std::domain_error("singular basis") if B is singular.
UTBasis to_cassels_form(const RatMatrix& B);

BoxEnumeration enumerate_box(const UTBasis& basis, const CubeSpec& cube, const EnumOptions& opts = {});

struct CountBounds {
  Int lower, upper;
};

/// prod floor(2R/a_mm) and prod (floor(2R/a_mm) + 1).
CountBounds box_count_bounds(const UTBasis& basis, const Rat& R);

struct Lemma21Bounds {
  std::optional<Rat> lower;  // absent when 2R < max{delta/c^(n-1), c}
  Rat upper;
};

/// Bounds for any lattice of determinant delta with a triangular basis whose
/// diagonal entries are at least c.
Lemma21Bounds lemma21_bounds(const Rat& delta, const Rat& c, std::size_t n, const Rat& R);

/// prod (2R/a_mm - 1), meaningful only when 2R >= max a_mm.
std::optional<Rat> relaxed_lower_bound(const UTBasis& basis, const Rat& R);

}  // namespace siegel
