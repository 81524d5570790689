#include "siegel/cube_count.hpp"

#include "siegel/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace siegel {

UTBasis UTBasis::from_matrix(RatMatrix a, std::optional<Rat> c) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw std::invalid_argument("triangular basis must be square and nonempty");
  Rat min_diag = a(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) <= 0) throw std::invalid_argument("diagonal entries must be positive");
    min_diag = std::min(min_diag, a(i, i));
    for (std::size_t j = 0; j < i; ++j)
      if (a(i, j) != 0) throw std::invalid_argument("basis is not upper-triangular");
  }
  if (c && (*c <= 0 || *c > min_diag)) throw std::invalid_argument("c must lie in (0, min a_mm]");
  return {std::move(a), c.value_or(min_diag)};
}

Rat UTBasis::det() const {
  Rat d = 1;
  for (std::size_t i = 0; i < n(); ++i) d *= a(i, i);
  return d;
}

bool UTBasis::is_cassels() const {
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = i + 1; j < n(); ++j)
      if (abs_of(a(i, j)) > a(i, i)) return false;
  return true;
}

std::vector<std::vector<Rat>> BoxEnumeration::points(const UTBasis& basis) const {
  std::vector<std::vector<Rat>> out;
  out.reserve(coeffs.size());
  const std::size_t n = basis.n();
  for (const auto& k : coeffs) {
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) x[i] += basis.a(i, j) * k[j];
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

Int common_denominator(const RatMatrix& m) {
  Int d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm_of(d, m(i, j).get_den());
  return d;
}

}  // namespace

UTBasis to_cassels_form(const RatMatrix& B) {
  const std::size_t n = B.rows();
  if (n == 0 || B.cols() != n) throw std::invalid_argument("basis must be square and nonempty");
  const Int D = common_denominator(B);
  // Reversing the rows turns the lower echelon HNF into an upper-triangular
  // basis once rows and columns are both reversed back.
  IntMatrix rev(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rev(n - 1 - i, j) = Int(B(i, j) * D);
  if (rev.is_zero()) throw std::domain_error("singular basis");
  Hnf<Int> h = hnf(rev);
  if (h.rank() < n) throw std::domain_error("singular basis");
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(h.H(n - 1 - i, n - 1 - j), D);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j).canonicalize();
  return UTBasis::from_matrix(std::move(a));
}

namespace {

// Integer-scaled problem: |sum_j A_ij k_j - z_i| <= R with everything
// multiplied by a common denominator.
struct ScaledBox {
  std::size_t n;
  std::vector<std::vector<Int>> a;  // a[i][j], j >= i
  std::vector<Int> z;
  Int R;
};

ScaledBox scale(const UTBasis& basis, const CubeSpec& cube) {
  const std::size_t n = basis.n();
  Int D = common_denominator(basis.a);
  D = lcm_of(D, cube.R.get_den());
  for (const auto& zi : cube.z) D = lcm_of(D, zi.get_den());
  ScaledBox s{n, std::vector<std::vector<Int>>(n, std::vector<Int>(n)), std::vector<Int>(n, Int(0)), Int(cube.R * D)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) s.a[i][j] = Int(basis.a(i, j) * D);
    if (!cube.z.empty()) s.z[i] = Int(cube.z[i] * D);
  }
  return s;
}

class Walker {
 public:
  Walker(const ScaledBox& box, bool keep) : box_(box), keep_(keep), k_(box.n), shift_(box.n) {}

  // Admissible range of k_i given k_{i+1..n-1}; false if empty.
  bool range(std::size_t i, Int& lo, Int& hi) {
    Int& s = shift_[i];
    s = box_.z[i];
    for (std::size_t j = i + 1; j < box_.n; ++j) s -= box_.a[i][j] * k_[j];
    Int t = s - box_.R;
    mpz_cdiv_q(lo.get_mpz_t(), t.get_mpz_t(), box_.a[i][i].get_mpz_t());
    t = s + box_.R;
    mpz_fdiv_q(hi.get_mpz_t(), t.get_mpz_t(), box_.a[i][i].get_mpz_t());
    return lo <= hi;
  }

  void descend(std::size_t i) {
    Int lo, hi;
    if (!range(i, lo, hi)) return;
    if (i == 0 && !keep_) {
      count_ += hi - lo + 1;
      return;
    }
    for (k_[i] = lo; k_[i] <= hi; ++k_[i]) {
      if (i == 0) {
        ++count_;
        found_.push_back(k_);
      } else {
        descend(i - 1);
      }
    }
  }

  void run_top(const Int& top) {
    const std::size_t n = box_.n;
    k_[n - 1] = top;
    if (n == 1) {
      ++count_;
      if (keep_) found_.push_back(k_);
      return;
    }
    descend(n - 2);
  }

  Int count_ = 0;
  std::vector<std::vector<Int>> found_;

 private:
  const ScaledBox& box_;
  bool keep_;
  std::vector<Int> k_;
  std::vector<Int> shift_;
};

}  // namespace

BoxEnumeration enumerate_box(const UTBasis& basis, const CubeSpec& cube, const EnumOptions& opts) {
  const std::size_t n = basis.n();
  if (cube.R <= 0) throw std::invalid_argument("cube half-side R must be positive");
  if (!cube.z.empty() && cube.z.size() != n) throw std::invalid_argument("shift has wrong dimension");
  const ScaledBox box = scale(basis, cube);

  Walker probe(box, false);
  Int lo, hi;
  BoxEnumeration out;
  out.count = 0;
  if (!probe.range(n - 1, lo, hi)) return out;
  const bool keep = !opts.count_only;

  std::vector<Int> tops;
  for (Int t = lo; t <= hi; ++t) tops.push_back(t);
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(tops.size())));
  std::vector<Walker> walkers(threads, Walker(box, keep));
  auto work = [&](unsigned id) {
    for (std::size_t t = id; t < tops.size(); t += threads) {
      walkers[id].run_top(tops[t]);
      if (walkers[id].found_.size() > opts.points_cap) walkers[id].found_.clear();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (auto& w : walkers) out.count += w.count_;
  if (!keep) return out;
  if (out.count > opts.points_cap) {
    out.truncated = true;
    return out;
  }
  for (auto& w : walkers)
    for (auto& k : w.found_) out.coeffs.push_back(std::move(k));
  std::sort(out.coeffs.begin(), out.coeffs.end());
  return out;
}

CountBounds box_count_bounds(const UTBasis& basis, const Rat& R) {
  if (R <= 0) throw std::invalid_argument("cube half-side R must be positive");
  CountBounds b{1, 1};
  for (std::size_t m = 0; m < basis.n(); ++m) {
    Int f = floor_of(2 * R / basis.a(m, m));
    b.lower *= f;
    b.upper *= f + 1;
  }
  return b;
}

Lemma21Bounds lemma21_bounds(const Rat& delta, const Rat& c, std::size_t n, const Rat& R) {
  if (delta <= 0 || c <= 0 || R <= 0 || n == 0) throw std::invalid_argument("lemma bounds need positive delta, c, R and n >= 1");
  const Rat cn = pow_of(c, static_cast<long>(n) - 1);
  const Rat first = 2 * R * cn / delta;
  const Rat rest = 2 * R / c;
  Lemma21Bounds b;
  b.upper = (first + 1) * pow_of(rest + 1, static_cast<long>(n) - 1);
  if (2 * R >= std::max(Rat(delta / cn), c)) b.lower = (first - 1) * pow_of(rest - 1, static_cast<long>(n) - 1);
  return b;
}

std::optional<Rat> relaxed_lower_bound(const UTBasis& basis, const Rat& R) {
  Rat prod = 1;
  for (std::size_t m = 0; m < basis.n(); ++m) {
    if (2 * R < basis.a(m, m)) return std::nullopt;
    prod *= 2 * R / basis.a(m, m) - 1;
  }
  return prod;
}

}  // namespace siegel
