#pragma once

// Explicit height bounds, evaluated in outward-rounded interval arithmetic and
// reported as dyadic rationals with a fixed number of fractional bits.

#include "siegel/field.hpp"
#include "siegel/interval.hpp"

#include <string>
#include <vector>

namespace siegel {

struct BoundOptions {
  unsigned frac_bits = 64;
};

struct BoundValue {
  std::string formula;  // siegel, main, R1, R2, n10, n11, extend, ...
  Rat upper;            // >= the exact value, a multiple of 2^-frac_bits
  double approx = 0;    // midpoint of the enclosure, for display

  std::string display() const;
};

struct SubspaceDatum {
  int dim = 1;     // l_i
  Rat height_sq;   // H(V_i)^2
};

struct BoundParams {
  FieldDescriptor field;
  int N = 2;
  int w = 2;
  int s = 1;
  Rat height_sq_W{1};
  std::vector<SubspaceDatum> vs;

  int l() const { return N / 2; }
  long M() const { return static_cast<long>(vs.size()); }
  /// Throws std::invalid_argument unless 1 <= s < w <= N, M >= 1,
  /// 1 <= l_i <= s and all heights positive.
  void validate() const;
};

BoundValue siegel_bound(const FieldDescriptor& field, int N, int w, const Rat& height_sq_W,
                        const BoundOptions& opts = {});
BoundValue main_constant(const FieldDescriptor& field, int N, int w, int s, const BoundOptions& opts = {});
BoundValue main_bound(const BoundParams& p, const BoundOptions& opts = {});

struct TheoremRadii {
  BoundValue R1, R2;
  const BoundValue& max() const { return R1.upper >= R2.upper ? R1 : R2; }
};
TheoremRadii theorem31_R1_R2(const BoundParams& p, const BoundOptions& opts = {});

/// Specialization to K = Q and s = w - 1; heights are squared.
BoundValue rational_case_bound(int N, int w, int l, const Rat& height_sq_W, const std::vector<Rat>& height_sq_V,
                               const BoundOptions& opts = {});
BoundValue inverse_siegel_bound(const FieldDescriptor& field, int N, long M, const BoundOptions& opts = {});
BoundValue extension_bound(const FieldDescriptor& field, int N, int w, const Rat& height_sq_W,
                           const Rat& height_sq_V, const BoundOptions& opts = {});

struct AdelicBoundValue {
  Rat lower;  // <= exact value clamped at 0, a multiple of 2^-frac_bits
  Rat upper;
  double lower_approx = 0, upper_approx = 0;
};

/// Two-sided bound on the number of points of W in the adelic cube of
/// radius R, with R given by its square. The lower side is reported as 0
/// whenever either of its factors is not positive.
AdelicBoundValue adelic_bounds(const FieldDescriptor& field, int N, int w, const Rat& height_sq_W,
                               const Rat& R_sq, const BoundOptions& opts = {});

}  // namespace siegel
