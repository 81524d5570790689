#pragma once

// The embedded lattice Lambda(V) = sigma^N(V ∩ O_K^N) in R^{Nd}, its square
// sublattice Omega(V), and exact counts of S_R(W), the points of W ∩ O_K^N
// whose archimedean coordinates are bounded by R.
//
// Radii are carried as R^2 so that Q(i) radii sqrt(n) stay exact. A point x
// lies in S_R(W) iff max_i N(x_i) <= R^2 (over Q, N(a) = a^2).

#include "siegel/bounds.hpp"
#include "siegel/cube_count.hpp"
#include "siegel/errors.hpp"
#include "siegel/heights.hpp"

#include <optional>
#include <vector>

namespace siegel {

/// sigma^N: identity over Q, (a+bi) -> (a, b) coordinatewise over Q(i).
std::vector<Rat> embed_sigma(const KVector& x, const FieldDescriptor& field);
std::vector<Int> embed_sigma(const OVector& x, const FieldDescriptor& field);
/// Inverse of embed_sigma on integral vectors.
OVector unembed_sigma(const std::vector<Int>& y, const FieldDescriptor& field);

struct EmbeddedLattice {
  FieldDescriptor field;
  std::size_t ambient = 0;  // N
  std::size_t dim = 0;      // l
  IntMatrix X;              // Nd x ld; columns sigma(b_j), sigma(i b_j) per basis vector b_j
  Int gram_det;             // det(X^T X) = det(Lambda(V))^2
  std::vector<Int> minors;  // det(X_I) for all ld-subsets I of rows, lexicographic
  std::vector<std::size_t> J;
  IntMatrix omega;  // X_J
  Int delta_sq;     // det(X_J)^2
  Rat height_sq;    // H(V)^2

  std::size_t rank() const { return X.cols(); }
  /// Omega(V) in upper-triangular form.
  UTBasis omega_cassels() const;
};

struct LatticeOptions {
  std::size_t minor_cap = 100'000;  // largest binom(Nd, ld) scanned
};

/// Builds Lambda(V) and checks the determinant identities. Throws
/// InstanceTooLarge if the minor scan exceeds the cap and TheoremViolation if
/// an identity fails.
EmbeddedLattice build_lambda(const Subspace& V, const LatticeOptions& opts = {});

/// X_J y for the integral y with X y = p. Throws std::invalid_argument if p is
/// not in Lambda(V).
std::vector<Int> project_phi(const EmbeddedLattice& L, const std::vector<Int>& p);

struct EnumerationLimits {
  std::size_t node_budget = 200'000'000;
  unsigned threads = 1;
  bool fincke_pohst = false;  // enumerate the enclosing ball instead of the echelon walk
};

/// Integral points x = B y of the lattice spanned by the columns of B with
/// |x_r| <= row_bound for every row; with complex_pairs, rows (2i, 2i+1) must
/// also satisfy x_{2i}^2 + x_{2i+1}^2 <= pair_bound_sq. Points are returned
/// sorted. Throws BudgetExceeded.
std::vector<std::vector<Int>> enumerate_lattice_box(const IntMatrix& B, const Int& row_bound, bool complex_pairs,
                                                    const Int& pair_bound_sq, const EnumerationLimits& limits = {});

/// Number of points enumerate_lattice_box would return.
Int count_lattice_box(const IntMatrix& B, const Int& row_bound, bool complex_pairs, const Int& pair_bound_sq,
                      const EnumerationLimits& limits = {});

/// All y with y^T G y <= T for a positive definite integral Gram matrix G.
/// Throws BudgetExceeded.
std::vector<std::vector<Int>> fincke_pohst(const IntMatrix& G, const Rat& T, std::size_t node_budget);

/// max_i N(x_i): the least R^2 with x in S_R.
Int archimedean_level(const OVector& x);

/// S_R(W) as points of O_K^N, sorted by their embedded coordinates.
std::vector<OVector> enumerate_S_R(const Subspace& W, const Rat& R_sq, const EnumerationLimits& limits = {});

/// |S_R(W)| without materializing the points (echelon engine only).
Int count_S_R_points(const Subspace& W, const Rat& R_sq, const EnumerationLimits& limits = {});

struct AdelicCount {
  Rat R_sq;
  Int count;
  Rat lower, upper;
  std::vector<OVector> points;
};

AdelicCount count_S_R(const Subspace& W, const Rat& R_sq, const EnumerationLimits& limits = {},
                      const BoundOptions& bound_opts = {});

/// |Lambda(V) ∩ C_R^{Nd}| for the real cube of half-side R.
Int count_lambda_cube(const EmbeddedLattice& L, const Rat& R, const EnumerationLimits& limits = {});
/// |Omega(V) ∩ C_R^{ld}|.
Int count_omega_cube(const EmbeddedLattice& L, const Rat& R);

/// f_W(R) = |S_R(W)| - |union of S_R(V_i)|, the V_i taken inside W.
Int counting_function_f(const Subspace& W, const std::vector<Subspace>& Vs, const Rat& R_sq,
                        const EnumerationLimits& limits = {});

struct MinimalRadius {
  Rat R_sq;
  std::vector<OVector> witnesses;  // every nonzero x in S_R(W) outside all V_i at level R^2
  std::size_t probes = 0;
  std::size_t enumerated = 0;  // points visited over all probes
};

/// Least R on the attainable spectrum (R^2 integral) for which some nonzero
/// point of S_R(W) avoids every V_i. Requires dim(V_i ∩ W) < dim W. With a
/// cap, a radius beyond it raises TheoremViolation.
MinimalRadius minimal_positive_R(const Subspace& W, const std::vector<Subspace>& Vs,
                                 const std::optional<Rat>& cap_sq = std::nullopt,
                                 const EnumerationLimits& limits = {});

}  // namespace siegel
