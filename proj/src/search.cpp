#include "siegel/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace siegel {

namespace {

void check_same_space(const Subspace& W, const Subspace& V) {
  if (!(V.field() == W.field()) || V.ambient() != W.ambient())
    throw std::invalid_argument("subspaces live in different spaces");
}

std::optional<Subspace> coordinate_line_outside(const Subspace& W) {
  for (std::size_t k = 0; k < W.ambient(); ++k) {
    KVector e(W.ambient());
    e[k] = 1;
    if (!W.contains(e)) return Subspace::from_basis(W.field(), {e});
  }
  return std::nullopt;
}

SubspaceDatum datum(const Subspace& V) { return {static_cast<int>(V.dim()), V.height().sq}; }

Rat dyadic_slack(unsigned frac_bits) {
  Rat r = 1;
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), frac_bits);
  return r;
}

}  // namespace

ResolvedInstance resolve_instance(const Instance& inst) {
  const Subspace& W = inst.W;
  require_exact(W.field());
  const int w = static_cast<int>(W.dim());
  if (w < 2) throw std::invalid_argument("W must have dimension at least 2");
  if (inst.Vs.empty()) throw std::invalid_argument("at least one subspace to avoid is required");

  std::vector<std::optional<Subspace>> meets;
  int widest = 0;
  for (const auto& V : inst.Vs) {
    check_same_space(W, V);
    meets.push_back(W.intersect(V));
    const int di = meets.back() ? static_cast<int>(meets.back()->dim()) : 0;
    if (di >= w) throw std::invalid_argument("W lies inside an avoided subspace");
    widest = std::max(widest, di);
  }

  ResolvedInstance r;
  r.s = inst.s.value_or(std::max(1, widest));
  if (r.s < 1 || r.s >= w) throw std::invalid_argument("s must satisfy 1 <= s < dim W");
  if (widest > r.s) throw std::invalid_argument("s is smaller than some dim(V_i ∩ W)");

  for (std::size_t i = 0; i < inst.Vs.size(); ++i) {
    if (static_cast<int>(inst.Vs[i].dim()) <= r.s)
      r.bound_subspaces.push_back(inst.Vs[i]);
    else if (meets[i])
      r.bound_subspaces.push_back(*meets[i]);
  }
  if (r.bound_subspaces.empty()) {
    // Every V_i is wider than s and meets W only in 0, so W != K^N.
    auto line = coordinate_line_outside(W);
    if (!line) throw std::logic_error("no coordinate line outside a proper subspace");
    r.bound_subspaces.push_back(*line);
  }

  r.params.field = W.field();
  r.params.N = static_cast<int>(W.ambient());
  r.params.w = w;
  r.params.s = r.s;
  r.params.height_sq_W = W.height().sq;
  for (const auto& V : r.bound_subspaces) r.params.vs.push_back(datum(V));
  r.params.validate();
  return r;
}

bool canonical_less(const OVector& a, const OVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = scalar_order(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

Certificate find_avoiding_point(const Instance& inst, const SearchOptions& opts) {
  ResolvedInstance r = resolve_instance(inst);
  const Subspace& W = inst.W;
  const FieldDescriptor& f = W.field();

  Certificate c;
  c.field = f;
  c.N = r.params.N;
  c.w = r.params.w;
  c.s = r.s;
  c.height_sq_W = r.params.height_sq_W;
  c.vs = r.params.vs;
  c.siegel = siegel_bound(f, c.N, c.w, c.height_sq_W, opts.bounds);
  c.main = main_bound(r.params, opts.bounds);
  c.radii = theorem31_R1_R2(r.params, opts.bounds);
  const Rat& rmax = c.radii.max().upper;
  const Int cap = ceil_of(rmax);

  MinimalRadius mr = minimal_positive_R(W, inst.Vs, Rat(cap * cap), opts.limits);
  c.R_sq = mr.R_sq;
  c.stats.probes = mr.probes;
  c.stats.points_enumerated = mr.enumerated;
  c.stats.avoiding_at_R = mr.witnesses.size();

  bool first = true;
  for (const auto& x : mr.witnesses) {
    OVector k = canonical_integral(to_kvector(x), f);
    Rat h = height_H(k, f).sq;
    if (first || h < c.witness_height_sq || (h == c.witness_height_sq && canonical_less(k, c.witness))) {
      c.witness = std::move(k);
      c.witness_height_sq = h;
      first = false;
    }
  }
  if (first) throw std::logic_error("minimal radius returned no witness");
  c.empirical_min_height_sq = c.witness_height_sq;

  if (c.witness_height_sq > c.R_sq) throw TheoremViolation("witness height exceeds its archimedean level");
  if (c.witness_height_sq > rmax * rmax) throw TheoremViolation("witness height exceeds max{R1, R2}");
  if (c.witness_height_sq > c.main.upper * c.main.upper) throw TheoremViolation("witness height exceeds the main bound");
  c.tightness_ratio = std::sqrt(c.witness_height_sq.get_d()) / rmax.get_d();
  return c;
}

VerifyReport verify_certificate(const Instance& inst, const Certificate& cert, const BoundOptions& opts) {
  VerifyReport rep;
  const FieldDescriptor& f = inst.W.field();
  bool nonzero = false;
  for (const auto& z : cert.witness) nonzero = nonzero || !z.is_zero();
  if (!nonzero || cert.witness.size() != inst.W.ambient()) return rep;

  rep.in_W = inst.W.contains(cert.witness);
  rep.avoids_all = true;
  for (const auto& V : inst.Vs) rep.avoids_all = rep.avoids_all && !V.contains(cert.witness);
  const Rat h = height_H(cert.witness, f).sq;
  rep.height_matches = h == cert.witness_height_sq;
  rep.within_R_sq = Rat(archimedean_level(cert.witness)) <= cert.R_sq && h <= cert.R_sq;

  ResolvedInstance r = resolve_instance(inst);
  BoundOptions fine{opts.frac_bits * 2};
  TheoremRadii radii = theorem31_R1_R2(r.params, fine);
  BoundValue main = main_bound(r.params, fine);
  BoundValue sg = siegel_bound(f, r.params.N, r.params.w, r.params.height_sq_W, fine);
  const Rat& rmax = radii.max().upper;
  rep.within_radii = h <= rmax * rmax;
  rep.within_main = h <= main.upper * main.upper;

  const Rat slack = dyadic_slack(opts.frac_bits);
  auto close = [&](const BoundValue& a, const BoundValue& b) { return abs_of(Rat(a.upper - b.upper)) <= slack; };
  rep.bounds_reproduced = close(radii.R1, cert.radii.R1) && close(radii.R2, cert.radii.R2) &&
                          close(main, cert.main) && close(sg, cert.siegel);
  return rep;
}

ExtensionResult extend_subspace(const Subspace& W, const Subspace& V, const SearchOptions& opts) {
  check_same_space(W, V);
  if (!W.contains(V)) throw std::invalid_argument("V is not contained in W");
  if (V.dim() + 1 != W.dim() || V.dim() < 1) throw std::invalid_argument("V must have dimension dim W - 1 >= 1");

  ExtensionResult out{{}, {}, {}, find_avoiding_point({W, {V}, static_cast<int>(V.dim())}, opts)};
  out.x = out.cert.witness;
  out.height_sq = out.cert.witness_height_sq;
  out.bound = extension_bound(W.field(), static_cast<int>(W.ambient()), static_cast<int>(W.dim()), W.height().sq,
                              V.height().sq, opts.bounds);

  std::vector<KVector> cols;
  for (const auto& b : V.basis_vectors()) cols.push_back(to_kvector(b));
  cols.push_back(to_kvector(out.x));
  if (Subspace::from_basis(W.field(), cols).dim() != W.dim()) throw TheoremViolation("extension does not span W");
  if (out.height_sq > out.bound.upper * out.bound.upper) throw TheoremViolation("extension exceeds its bound");
  return out;
}

GaussRat evaluate_form(const KVector& form, const OVector& x) {
  if (form.size() != x.size()) throw std::invalid_argument("form and point lengths differ");
  GaussRat acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc += form[i] * GaussRat(x[i]);
  return acc;
}

FormsResult nonvanishing_point_forms(const FieldDescriptor& field, std::size_t N, const std::vector<KVector>& forms,
                                     const SearchOptions& opts) {
  require_exact(field);
  if (N < 2) throw std::invalid_argument("need N >= 2");
  if (forms.empty()) throw std::invalid_argument("need at least one form");
  std::vector<Subspace> kernels;
  for (const auto& L : forms) {
    if (L.size() != N) throw std::invalid_argument("form has wrong length");
    kernels.push_back(nullspace_of_form(field, L));
  }
  const Subspace W = Subspace::full(field, N);
  FormsResult out{{}, {}, {}, find_avoiding_point({W, kernels, static_cast<int>(N) - 1}, opts)};
  out.x = out.cert.witness;
  out.height_sq = out.cert.witness_height_sq;
  out.bound = inverse_siegel_bound(field, static_cast<int>(N), static_cast<long>(forms.size()), opts.bounds);
  for (const auto& L : forms)
    if (evaluate_form(L, out.x).is_zero()) throw TheoremViolation("a form vanishes at the witness");
  if (out.height_sq > out.bound.upper * out.bound.upper) throw TheoremViolation("witness exceeds the forms bound");
  return out;
}

void Polynomial::add_term(const std::vector<unsigned>& e, const Rat& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (unsigned k : e) t += static_cast<int>(k);
    best = std::max(best, t);
  }
  return best;
}

Rat Polynomial::operator()(const std::vector<Int>& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("point has wrong length");
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Int m = 1;
    for (std::size_t i = 0; i < nvars_; ++i) {
      Int p;
      mpz_pow_ui(p.get_mpz_t(), x[i].get_mpz_t(), e[i]);
      m *= p;
    }
    acc += c * Rat(m);
  }
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomials in different variables");
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomials in different variables");
  Polynomial out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<unsigned> e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

namespace {

// Odometer over {lo..hi}^n, last coordinate fastest.
bool next_point(std::vector<Int>& x, const Int& lo, const Int& hi) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] < hi) {
      ++x[i];
      return true;
    }
    x[i] = lo;
  }
  return false;
}

}  // namespace

std::vector<Int> nonvanishing_point_poly(const Polynomial& F, std::size_t max_points) {
  if (F.is_zero()) throw std::invalid_argument("zero polynomial");
  const Int M = F.degree();
  std::vector<Int> x(F.nvars(), Int(0));
  std::size_t evaluated = 0;
  do {
    if (++evaluated > max_points) throw InstanceTooLarge();
    if (F(x) != 0) return x;
  } while (next_point(x, 0, M));
  throw TheoremViolation("polynomial vanishes on the whole grid");
}

Polynomial vanishing_witness(std::size_t M, std::size_t N, const std::vector<Int>& alphas, std::size_t max_points) {
  if (M < 1 || N < 1) throw std::invalid_argument("need M >= 1 and N >= 1");
  if (alphas.size() != M) throw std::invalid_argument("need exactly M alphas");
  if (std::set<Int>(alphas.begin(), alphas.end()).size() != M) throw std::invalid_argument("alphas must be distinct");
  double grid = std::pow(static_cast<double>(M), static_cast<double>(N));
  if (grid > static_cast<double>(max_points)) throw InstanceTooLarge();

  Polynomial F(N);
  for (std::size_t i = 0; i < N; ++i) {
    Polynomial prod(N);
    prod.add_term(std::vector<unsigned>(N, 0), 1);
    for (const auto& a : alphas) {
      Polynomial lin(N);
      std::vector<unsigned> e(N, 0);
      e[i] = 1;
      lin.add_term(e, 1);
      lin.add_term(std::vector<unsigned>(N, 0), Rat(-a));
      prod = prod * lin;
    }
    F = F + prod;
  }

  std::vector<std::size_t> idx(N, 0);
  while (true) {
    std::vector<Int> x(N);
    for (std::size_t i = 0; i < N; ++i) x[i] = alphas[idx[i]];
    if (F(x) != 0) throw TheoremViolation("vanishing witness is nonzero on its grid");
    std::size_t i = 0;
    while (i < N && idx[i] + 1 == M) idx[i++] = 0;
    if (i == N) break;
    ++idx[i];
  }
  return F;
}

namespace {

struct MinimaKey {
  Int sup, euclid;
  std::size_t pivot;
  OVector v;
};

bool key_less(const MinimaKey& a, const MinimaKey& b) {
  if (a.sup != b.sup) return a.sup < b.sup;
  if (a.euclid != b.euclid) return a.euclid < b.euclid;
  if (a.pivot != b.pivot) return a.pivot < b.pivot;
  return canonical_less(a.v, b.v);
}

}  // namespace

ProbeReport sharpness_probe(const Subspace& W, const SearchOptions& opts) {
  if (W.field().kind != FieldKind::Q) throw std::invalid_argument("sharpness probe needs K = Q");
  const std::size_t w = W.dim();
  if (w < 2) throw std::invalid_argument("sharpness probe needs dim W >= 2");
  const FieldDescriptor& f = W.field();

  ProbeReport rep;
  for (Int R = 1;; R *= 2) {
    std::set<OVector, bool (*)(const OVector&, const OVector&)> seen(canonical_less);
    std::vector<MinimaKey> keys;
    for (const auto& x : enumerate_S_R(W, Rat(R * R), opts.limits)) {
      bool zero = true;
      for (const auto& c : x) zero = zero && c.is_zero();
      if (zero) continue;
      OVector k = canonical_integral(to_kvector(x), f);
      if (!seen.insert(k).second) continue;
      MinimaKey key{0, 0, 0, k};
      bool pivot_set = false;
      for (std::size_t i = 0; i < k.size(); ++i) {
        const Int a = abs_of(k[i].re);
        key.sup = std::max(key.sup, a);
        key.euclid += a * a;
        if (!pivot_set && a != 0) {
          key.pivot = i;
          pivot_set = true;
        }
      }
      keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end(), key_less);

    std::vector<KVector> chosen;
    rep.minima_vectors.clear();
    rep.minima.clear();
    for (const auto& k : keys) {
      chosen.push_back(to_kvector(k.v));
      if (Subspace::from_basis(f, chosen).dim() == chosen.size()) {
        rep.minima_vectors.push_back(k.v);
        rep.minima.push_back(k.sup);
        if (chosen.size() == w) break;
      } else {
        chosen.pop_back();
      }
    }
    if (rep.minima_vectors.size() == w) break;
  }

  std::vector<KVector> first;
  for (std::size_t k = 0; k + 1 < w; ++k) first.push_back(to_kvector(rep.minima_vectors[k]));
  rep.cert = find_avoiding_point({W, {Subspace::from_basis(f, first)}, static_cast<int>(w) - 1}, opts);
  const double hcal = std::sqrt(W.height().sq.get_d());
  rep.ratio = std::sqrt(rep.cert.witness_height_sq.get_d()) / hcal;
  double prod = 1;
  for (const auto& m : rep.minima) prod *= m.get_d();
  rep.minima_product_ratio = prod / hcal;
  return rep;
}

}  // namespace siegel
