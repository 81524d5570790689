#pragma once

// Constructive small-height points: a point of W outside finitely many
// subspaces, a vector completing a hyperplane of W, points where linear forms
// or a polynomial do not vanish, and a probe of how large the avoiding point
// can be relative to the height of W.

#include "siegel/adelic.hpp"
#include "siegel/bounds.hpp"
#include "siegel/heights.hpp"

#include <map>
#include <optional>
#include <vector>

namespace siegel {

struct SearchOptions {
  BoundOptions bounds;
  EnumerationLimits limits{10'000'000, 1, false};
};

struct Instance {
  Subspace W;
  std::vector<Subspace> Vs;
  std::optional<int> s;  // defaults to max(1, max dim(V_i ∩ W))
};

/// The avoided subspaces as seen by the bound formulas: V_i itself when
/// dim V_i <= s, otherwise V_i ∩ W. Subspaces meeting W only in 0 are dropped
/// when larger than s; if nothing is left, a coordinate line outside W stands
/// in (every nonzero point of W avoids such V_i anyway).
struct ResolvedInstance {
  int s = 1;
  std::vector<Subspace> bound_subspaces;
  BoundParams params;
};

/// Checks the hypotheses (exact field, w >= 2, M >= 1, dim(V_i ∩ W) < w,
/// max dim(V_i ∩ W) <= s < w) and resolves s and the bound subspaces. Throws
/// std::invalid_argument on failure.
ResolvedInstance resolve_instance(const Instance& inst);

struct SearchStats {
  std::size_t probes = 0;
  std::size_t points_enumerated = 0;
  std::size_t avoiding_at_R = 0;  // avoiding points at the winning level
};

struct Certificate {
  FieldDescriptor field;
  int N = 0, w = 0, s = 0;
  Rat height_sq_W;
  std::vector<SubspaceDatum> vs;  // dims and heights entering the bounds
  BoundValue siegel, main;
  TheoremRadii radii;
  OVector witness;  // canonical integral representative
  Rat witness_height_sq;
  Rat empirical_min_height_sq;
  Rat R_sq;                    // winning level max_i N(x_i)
  double tightness_ratio = 0;  // H(witness) / max{R1, R2}, display only
  SearchStats stats;
};

/// Least-level nonzero point of W ∩ O_K^N outside every V_i; among those at
/// the winning level, least H, then lexicographically least canonical
/// representative under scalar_order. Throws TheoremViolation if the level
/// passes ceil(max{R1, R2})^2 or a bound fails, BudgetExceeded from the
/// enumeration.
Certificate find_avoiding_point(const Instance& inst, const SearchOptions& opts = {});

/// Lexicographic comparison of integral vectors under scalar_order.
bool canonical_less(const OVector& a, const OVector& b);

struct VerifyReport {
  bool in_W = false;
  bool avoids_all = false;
  bool height_matches = false;
  bool within_R_sq = false;
  bool within_radii = false;
  bool within_main = false;
  bool bounds_reproduced = false;  // recomputed uppers agree within 2^-frac_bits
  bool ok() const {
    return in_W && avoids_all && height_matches && within_R_sq && within_radii && within_main && bounds_reproduced;
  }
};

/// Rechecks a certificate; bounds are recomputed with twice the fractional bits.
VerifyReport verify_certificate(const Instance& inst, const Certificate& cert, const BoundOptions& opts = {});

struct ExtensionResult {
  OVector x;
  BoundValue bound;
  Rat height_sq;
  Certificate cert;
};

/// x in W ∩ O_K^N with span{V, x} = W. Requires V ⊂ W and dim V = w - 1 >= 1.
ExtensionResult extend_subspace(const Subspace& W, const Subspace& V, const SearchOptions& opts = {});

struct FormsResult {
  OVector x;
  BoundValue bound;
  Rat height_sq;
  Certificate cert;
};

/// Integral x with L_i(x) != 0 for every form, via the nullspaces of the forms
/// inside K^N.
FormsResult nonvanishing_point_forms(const FieldDescriptor& field, std::size_t N, const std::vector<KVector>& forms,
                                     const SearchOptions& opts = {});

/// Sum of a linear form at an integral point.
GaussRat evaluate_form(const KVector& form, const OVector& x);

/// Polynomial over Q in N variables; exponent vectors map to nonzero
/// coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const std::map<std::vector<unsigned>, Rat>& terms() const { return terms_; }
  /// Adds c * X^e; zero results are removed.
  void add_term(const std::vector<unsigned>& e, const Rat& c);
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Rat operator()(const std::vector<Int>& x) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t nvars_;
  std::map<std::vector<unsigned>, Rat> terms_;
};

/// Lexicographically first x in {0..M}^N (last coordinate fastest) with
/// F(x) != 0, M the total degree. Throws std::invalid_argument for the zero
/// polynomial and InstanceTooLarge past max_points evaluations.
std::vector<Int> nonvanishing_point_poly(const Polynomial& F, std::size_t max_points = 10'000'000);

/// F = sum_i prod_j (X_i - alpha_j), checked to vanish on {alpha}^N. Throws
/// std::invalid_argument for repeated alphas and InstanceTooLarge when the
/// check exceeds max_points evaluations.
Polynomial vanishing_witness(std::size_t M, std::size_t N, const std::vector<Int>& alphas,
                             std::size_t max_points = 1'000'000);

struct ProbeReport {
  std::vector<OVector> minima_vectors;  // one per successive minimum
  std::vector<Int> minima;              // sup-norms, nondecreasing
  Certificate cert;                     // avoiding the span of the first w - 1
  double ratio = 0;                     // H(witness) / Hcal(W)
  double minima_product_ratio = 0;      // prod lambda_k / Hcal(W)
};

/// Successive minima of W ∩ Z^N for the sup-norm, then the avoiding point for
/// the span of the first w - 1 minima vectors. Requires K = Q and w >= 2.
ProbeReport sharpness_probe(const Subspace& W, const SearchOptions& opts = {});

}  // namespace siegel
