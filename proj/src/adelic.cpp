#include "siegel/adelic.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace siegel {

std::vector<Rat> embed_sigma(const KVector& x, const FieldDescriptor& field) {
  require_exact(field);
  std::vector<Rat> out;
  for (const auto& c : x) {
    if (field.kind == FieldKind::Q) {
      if (!c.is_real()) throw std::invalid_argument("non-rational entry over Q");
      out.push_back(c.re);
    } else {
      out.push_back(c.re);
      out.push_back(c.im);
    }
  }
  return out;
}

std::vector<Int> embed_sigma(const OVector& x, const FieldDescriptor& field) {
  require_exact(field);
  std::vector<Int> out;
  for (const auto& c : x) {
    if (field.kind == FieldKind::Q) {
      if (!c.is_real()) throw std::invalid_argument("non-rational entry over Q");
      out.push_back(c.re);
    } else {
      out.push_back(c.re);
      out.push_back(c.im);
    }
  }
  return out;
}

OVector unembed_sigma(const std::vector<Int>& y, const FieldDescriptor& field) {
  require_exact(field);
  OVector out;
  if (field.kind == FieldKind::Q) {
    for (const auto& v : y) out.emplace_back(v);
  } else {
    if (y.size() % 2) throw std::invalid_argument("odd length embedded vector");
    for (std::size_t i = 0; i < y.size(); i += 2) out.emplace_back(y[i], y[i + 1]);
  }
  return out;
}

namespace {

// Z-basis of Lambda(V): sigma(b_j), and over Q(i) also sigma(i b_j).
IntMatrix embedded_basis(const Subspace& V) {
  const FieldDescriptor& f = V.field();
  const std::size_t d = static_cast<std::size_t>(f.d);
  const GaussMatrix& B = V.basis();
  IntMatrix X(V.ambient() * d, V.dim() * d);
  for (std::size_t j = 0; j < V.dim(); ++j) {
    OVector b = B.column(j);
    auto e = embed_sigma(b, f);
    for (std::size_t r = 0; r < e.size(); ++r) X(r, j * d) = e[r];
    if (d == 2) {
      for (auto& c : b) c = c * GaussInt(0, 1);
      auto ei = embed_sigma(b, f);
      for (std::size_t r = 0; r < ei.size(); ++r) X(r, j * d + 1) = ei[r];
    }
  }
  return X;
}

}  // namespace

UTBasis EmbeddedLattice::omega_cassels() const { return to_cassels_form(convert<Rat>(omega)); }

EmbeddedLattice build_lambda(const Subspace& V, const LatticeOptions& opts) {
  const FieldDescriptor& f = V.field();
  require_exact(f);
  const std::size_t d = static_cast<std::size_t>(f.d);
  EmbeddedLattice L;
  L.field = f;
  L.ambient = V.ambient();
  L.dim = V.dim();
  L.height_sq = V.height().sq;
  L.X = embedded_basis(V);
  const std::size_t n = L.X.rows(), k = L.X.cols();
  const Int count = binomial(n, k);
  if (count > static_cast<unsigned long>(opts.minor_cap)) throw InstanceTooLarge();

  L.gram_det = det_bareiss(IntMatrix(L.X.transpose() * L.X));
  Int sum = 0, best = -1;
  for (const auto& I : subsets_lex(n, k)) {
    Int m = det_bareiss(L.X.select_rows(I));
    sum += m * m;
    if (abs_of(m) > best) {
      best = abs_of(m);
      L.J = I;
    }
    L.minors.push_back(std::move(m));
  }
  L.omega = L.X.select_rows(L.J);
  L.delta_sq = best * best;

  if (sum != L.gram_det) throw TheoremViolation("Cauchy-Binet sum differs from the Gram determinant");
  const Rat lhs = Rat(L.gram_det) * pow_of(Rat(4), static_cast<long>(L.dim) * f.r2);
  const Rat rhs = pow_of(f.abs_disc, static_cast<long>(L.dim)) * pow_of(L.height_sq, static_cast<long>(d));
  if (lhs != rhs) throw TheoremViolation("lattice determinant does not match the subspace height");
  if (L.delta_sq > L.gram_det || L.delta_sq * count < L.gram_det)
    throw TheoremViolation("square sublattice determinant outside its bounds");
  return L;
}

std::vector<Int> project_phi(const EmbeddedLattice& L, const std::vector<Int>& p) {
  if (p.size() != L.X.rows()) throw std::invalid_argument("point has wrong dimension");
  std::vector<Rat> y;
  if (!solve_rational(convert<Rat>(L.X), std::vector<Rat>(p.begin(), p.end()), y))
    throw std::invalid_argument("point is not in the lattice");
  std::vector<Int> yi;
  for (const auto& v : y) {
    if (v.get_den() != 1) throw std::invalid_argument("point is not in the lattice");
    yi.push_back(v.get_num());
  }
  return L.omega * yi;
}

namespace {

// Depth-first walk over y_0, y_1, ... for a lower echelon basis: after y_k is
// fixed, all rows before the next pivot are determined and can be tested.
class EchelonWalker {
 public:
  EchelonWalker(const IntMatrix& H, const std::vector<std::size_t>& piv, const Int& row_bound, bool pairs,
                const Int& pair_sq, std::size_t budget, std::atomic<std::size_t>& nodes, bool keep)
      : H_(H), piv_(piv), bound_(row_bound), pairs_(pairs), pair_sq_(pair_sq), budget_(budget), nodes_(nodes),
        keep_(keep), x_(H.rows(), Int(0)) {}

  bool range(std::size_t k, Int& lo, Int& hi) {
    const std::size_t r = piv_[k];
    Int b = bound_;
    if (pairs_ && r % 2 == 1) {
      Int rem = pair_sq_ - x_[r - 1] * x_[r - 1];
      if (rem < 0) return false;
      b = std::min(b, Int(floor_sqrt(Rat(rem))));
    }
    const Int& h = H_(r, k);
    Int t = -b - x_[r];
    mpz_cdiv_q(lo.get_mpz_t(), t.get_mpz_t(), h.get_mpz_t());
    t = b - x_[r];
    mpz_fdiv_q(hi.get_mpz_t(), t.get_mpz_t(), h.get_mpz_t());
    return lo <= hi;
  }

  void add_column(std::size_t k, const Int& times) {
    if (times == 0) return;
    for (std::size_t r = piv_[k]; r < x_.size(); ++r)
      if (H_(r, k) != 0) x_[r] += times * H_(r, k);
  }

  bool rows_ok(std::size_t k) const {
    const std::size_t end = k + 1 < piv_.size() ? piv_[k + 1] : x_.size();
    for (std::size_t r = piv_[k]; r < end; ++r) {
      if (abs_of(x_[r]) > bound_) return false;
      if (pairs_ && r % 2 == 1 && x_[r - 1] * x_[r - 1] + x_[r] * x_[r] > pair_sq_) return false;
    }
    return true;
  }

  void record() {
    ++count_;
    if (keep_) found_.push_back(x_);
  }

  void walk(std::size_t k) {
    Int lo, hi;
    if (!range(k, lo, hi)) return;
    if (!keep_ && k + 1 == piv_.size() && piv_[k] + 1 == x_.size()) {
      // Last pivot in the last row: every value in range is a point.
      nodes_.fetch_add(1, std::memory_order_relaxed);
      count_ += hi - lo + 1;
      return;
    }
    add_column(k, lo);
    for (Int y = lo; y <= hi; ++y) {
      if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) throw BudgetExceeded();
      if (rows_ok(k)) {
        if (k + 1 == piv_.size())
          record();
        else
          walk(k + 1);
      }
      add_column(k, 1);
    }
    add_column(k, -(hi + 1));
  }

  void walk_top(const Int& y0) {
    add_column(0, y0);
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) throw BudgetExceeded();
    if (rows_ok(0)) {
      if (piv_.size() == 1)
        record();
      else
        walk(1);
    }
    add_column(0, -y0);
  }

  std::vector<std::vector<Int>> found_;
  Int count_ = 0;

 private:
  const IntMatrix& H_;
  const std::vector<std::size_t>& piv_;
  Int bound_;
  bool pairs_;
  Int pair_sq_;
  std::size_t budget_;
  std::atomic<std::size_t>& nodes_;
  bool keep_;
  std::vector<Int> x_;
};

}  // namespace

namespace {

// Runs the walk and hands each finished walker to collect. Top-level values
// are dealt round-robin to threads.
template <class Collect>
void run_echelon(const IntMatrix& B, const Int& row_bound, bool complex_pairs, const Int& pair_bound_sq,
                 const EnumerationLimits& limits, bool keep, Collect collect) {
  if (complex_pairs && B.rows() % 2) throw std::invalid_argument("complex pairs need an even number of rows");
  if (row_bound < 0) return;
  std::atomic<std::size_t> nodes{0};
  if (B.is_zero()) {
    static const std::vector<std::size_t> none;
    EchelonWalker w(B, none, row_bound, complex_pairs, pair_bound_sq, limits.node_budget, nodes, keep);
    w.record();
    collect(w);
    return;
  }
  Hnf<Int> h = hnf(B);
  std::vector<std::size_t> idx(h.rank());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const IntMatrix H = h.H.select_cols(idx);
  const std::vector<std::size_t>& piv = h.pivot_rows;

  EchelonWalker probe(H, piv, row_bound, complex_pairs, pair_bound_sq, limits.node_budget, nodes, keep);
  Int lo, hi;
  if (!probe.range(0, lo, hi)) return;
  std::vector<Int> tops;
  for (Int t = lo; t <= hi; ++t) tops.push_back(t);

  const unsigned threads = std::max(1u, std::min<unsigned>(limits.threads, static_cast<unsigned>(tops.size())));
  std::vector<EchelonWalker> walkers(
      threads, EchelonWalker(H, piv, row_bound, complex_pairs, pair_bound_sq, limits.node_budget, nodes, keep));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t t = id; t < tops.size(); t += threads) walkers[id].walk_top(tops[t]);
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& w : walkers) collect(w);
}

}  // namespace

std::vector<std::vector<Int>> enumerate_lattice_box(const IntMatrix& B, const Int& row_bound, bool complex_pairs,
                                                    const Int& pair_bound_sq, const EnumerationLimits& limits) {
  std::vector<std::vector<Int>> out;
  run_echelon(B, row_bound, complex_pairs, pair_bound_sq, limits, true, [&](EchelonWalker& w) {
    for (auto& p : w.found_) out.push_back(std::move(p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

Int count_lattice_box(const IntMatrix& B, const Int& row_bound, bool complex_pairs, const Int& pair_bound_sq,
                      const EnumerationLimits& limits) {
  Int total = 0;
  run_echelon(B, row_bound, complex_pairs, pair_bound_sq, limits, false,
              [&](EchelonWalker& w) { total += w.count_; });
  return total;
}

std::vector<std::vector<Int>> fincke_pohst(const IntMatrix& G, const Rat& T, std::size_t node_budget) {
  const std::size_t k = G.rows();
  if (k == 0 || G.cols() != k) throw std::invalid_argument("Gram matrix must be square and nonempty");
  if (T < 0) return {};
  // G = sum_i q_i (y_i + sum_{j>i} mu_ij y_j)^2 by symmetric elimination.
  RatMatrix a = convert<Rat>(G);
  std::vector<Rat> q(k);
  RatMatrix mu(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = a(i, i);
    if (q[i] <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < k; ++j) mu(i, j) = a(i, j) / q[i];
    for (std::size_t r = i + 1; r < k; ++r)
      for (std::size_t c = r; c < k; ++c) {
        a(r, c) -= mu(i, r) * mu(i, c) * q[i];
        a(c, r) = a(r, c);
      }
  }

  std::vector<std::vector<Int>> out;
  std::vector<Int> y(k, Int(0));
  std::vector<Rat> rest(k + 1);
  rest[k] = T;
  std::size_t nodes = 0;
  auto fits = [&](std::size_t i, const Int& v, const Rat& c) {
    Rat t = Rat(v) - c;
    return q[i] * t * t <= rest[i + 1];
  };
  auto level = [&](auto&& self, std::size_t i) -> void {
    Rat c = 0;
    for (std::size_t j = i + 1; j < k; ++j) c -= mu(i, j) * y[j];
    const Int s = floor_sqrt(rest[i + 1] / q[i]);
    Int lo = floor_of(c) - s - 1, hi = ceil_of(c) + s + 1;
    while (lo <= hi && !fits(i, lo, c)) ++lo;
    while (hi >= lo && !fits(i, hi, c)) --hi;
    for (y[i] = lo; y[i] <= hi; ++y[i]) {
      if (++nodes > node_budget) throw BudgetExceeded();
      Rat t = Rat(y[i]) - c;
      rest[i] = rest[i + 1] - q[i] * t * t;
      if (i == 0)
        out.push_back(y);
      else
        self(self, i - 1);
    }
    y[i] = 0;
  };
  level(level, k - 1);
  std::sort(out.begin(), out.end());
  return out;
}

Int archimedean_level(const OVector& x) {
  Int best = 0;
  for (const auto& c : x) best = std::max(best, c.norm());
  return best;
}

std::vector<OVector> enumerate_S_R(const Subspace& W, const Rat& R_sq, const EnumerationLimits& limits) {
  const FieldDescriptor& f = W.field();
  require_exact(f);
  if (R_sq <= 0) throw std::invalid_argument("R must be positive");
  const IntMatrix X = embedded_basis(W);
  const Int level_cap = floor_of(R_sq);  // N(x_i) is an integer
  std::vector<std::vector<Int>> pts;
  if (limits.fincke_pohst) {
    const Rat T = Rat(static_cast<long>(W.ambient())) * level_cap;
    for (const auto& y : fincke_pohst(IntMatrix(X.transpose() * X), T, limits.node_budget)) {
      std::vector<Int> x = X * y;
      if (archimedean_level(unembed_sigma(x, f)) <= level_cap) pts.push_back(std::move(x));
    }
    std::sort(pts.begin(), pts.end());
  } else {
    pts = enumerate_lattice_box(X, floor_sqrt(R_sq), f.kind == FieldKind::QI, level_cap, limits);
  }
  std::vector<OVector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(unembed_sigma(p, f));
  return out;
}

Int count_S_R_points(const Subspace& W, const Rat& R_sq, const EnumerationLimits& limits) {
  require_exact(W.field());
  if (R_sq <= 0) throw std::invalid_argument("R must be positive");
  return count_lattice_box(embedded_basis(W), floor_sqrt(R_sq), W.field().kind == FieldKind::QI, floor_of(R_sq),
                           limits);
}

AdelicCount count_S_R(const Subspace& W, const Rat& R_sq, const EnumerationLimits& limits,
                      const BoundOptions& bound_opts) {
  AdelicCount c;
  c.R_sq = R_sq;
  c.points = enumerate_S_R(W, R_sq, limits);
  c.count = static_cast<unsigned long>(c.points.size());
  AdelicBoundValue b = adelic_bounds(W.field(), static_cast<int>(W.ambient()), static_cast<int>(W.dim()),
                                     W.height().sq, R_sq, bound_opts);
  c.lower = b.lower;
  c.upper = b.upper;
  return c;
}

Int count_lambda_cube(const EmbeddedLattice& L, const Rat& R, const EnumerationLimits& limits) {
  if (R <= 0) throw std::invalid_argument("R must be positive");
  return count_lattice_box(L.X, floor_of(R), false, 0, limits);
}

Int count_omega_cube(const EmbeddedLattice& L, const Rat& R) {
  EnumOptions opts;
  opts.count_only = true;
  return enumerate_box(L.omega_cassels(), CubeSpec::centered(R), opts).count;
}

namespace {

bool avoids(const OVector& x, const std::vector<Subspace>& Vs) {
  for (const auto& V : Vs)
    if (V.contains(x)) return false;
  return true;
}

}  // namespace

Int counting_function_f(const Subspace& W, const std::vector<Subspace>& Vs, const Rat& R_sq,
                        const EnumerationLimits& limits) {
  Int f = 0;
  for (const auto& x : enumerate_S_R(W, R_sq, limits))
    if (avoids(x, Vs)) ++f;
  return f;
}

MinimalRadius minimal_positive_R(const Subspace& W, const std::vector<Subspace>& Vs, const std::optional<Rat>& cap_sq,
                                 const EnumerationLimits& limits) {
  for (const auto& V : Vs) {
    if (!(V.field() == W.field()) || V.ambient() != W.ambient())
      throw std::invalid_argument("subspaces live in different spaces");
    if (V.contains(W)) throw std::invalid_argument("W lies inside an avoided subspace");
  }
  MinimalRadius out;
  Rat R_sq = 1;
  while (true) {
    ++out.probes;
    Int best = -1;
    auto pts = enumerate_S_R(W, R_sq, limits);
    out.enumerated += pts.size();
    for (auto& x : pts) {
      const Int lv = archimedean_level(x);
      if (lv == 0 || !avoids(x, Vs)) continue;
      if (best < 0 || lv < best) {
        best = lv;
        out.witnesses.clear();
      }
      if (lv == best) out.witnesses.push_back(std::move(x));
    }
    if (best > 0) {
      out.R_sq = best;
      if (cap_sq && out.R_sq > *cap_sq) throw TheoremViolation("no avoiding point within the proven radius");
      return out;
    }
    if (cap_sq && R_sq >= *cap_sq) throw TheoremViolation("no avoiding point within the proven radius");
    R_sq *= 4;
    if (cap_sq && R_sq > *cap_sq) R_sq = ceil_of(*cap_sq);
  }
}

}  // namespace siegel
