#include "siegel/linalg.hpp"

#include "doctest.h"

#include <cstdint>
#include <random>

using namespace siegel;

namespace {

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

GaussMatrix random_gauss_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  GaussMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = GaussInt(static_cast<long>(rng() % (2 * bound + 1)) - bound,
                         static_cast<long>(rng() % (2 * bound + 1)) - bound);
  return m;
}

// Textbook column reduction on machine integers, used only as an oracle for
// tiny matrices: repeated subtraction of the smaller entry (no division).
std::vector<std::vector<int64_t>> oracle_hnf(std::vector<std::vector<int64_t>> a) {
  const std::size_t m = a.size(), n = a[0].size();
  std::size_t k = 0;
  auto col_sub = [&](std::size_t t, std::size_t s) {
    for (std::size_t r = 0; r < m; ++r) a[r][t] -= a[r][s];
  };
  auto col_add = [&](std::size_t t, std::size_t s) {
    for (std::size_t r = 0; r < m; ++r) a[r][t] += a[r][s];
  };
  for (std::size_t i = 0; i < m && k < n; ++i) {
    for (std::size_t j = k + 1; j < n; ++j) {
      while (a[i][j] != 0) {
        if (a[i][k] == 0 || std::llabs(a[i][j]) < std::llabs(a[i][k])) {
          for (std::size_t r = 0; r < m; ++r) std::swap(a[r][k], a[r][j]);
          continue;
        }
        if ((a[i][j] > 0) == (a[i][k] > 0)) col_sub(j, k); else col_add(j, k);
      }
    }
    if (a[i][k] == 0) continue;
    if (a[i][k] < 0)
      for (std::size_t r = 0; r < m; ++r) a[r][k] = -a[r][k];
    for (std::size_t j = 0; j < k; ++j) {
      while (a[i][j] < 0) col_add(j, k);
      while (a[i][j] >= a[i][k]) col_sub(j, k);
    }
    ++k;
  }
  return a;
}

bool is_integral_combination(const IntMatrix& basis, const std::vector<Int>& p) {
  std::vector<Rat> y;
  std::vector<Rat> rp(p.begin(), p.end());
  if (!solve_rational(convert<Rat>(basis), rp, y)) return false;
  for (const auto& v : y)
    if (v.get_den() != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("hnf examples") {
  IntMatrix m{{2, 4}, {0, 2}};
  auto oracle = oracle_hnf({{2, 4}, {0, 2}});
  Hnf<Int> h = hnf(m);
  CHECK(h.H == IntMatrix{{2, 0}, {0, 2}});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(h.H(i, j) == oracle[i][j]);
  CHECK(m * h.U == h.H);

  CHECK(hnf(IntMatrix::identity(3)).H == IntMatrix::identity(3));
  CHECK(hnf(IntMatrix{{1, 2, 3}}).H == IntMatrix{{1, 0, 0}});
  CHECK_THROWS_WITH_AS(hnf(IntMatrix(2, 2)), "rank zero", std::domain_error);
}

TEST_CASE("hnf agrees with the textbook oracle and is unimodular") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    IntMatrix m = random_int_matrix(rng, r, c, 4);
    if (m.is_zero()) continue;
    std::vector<std::vector<int64_t>> raw(r, std::vector<int64_t>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) raw[i][j] = m(i, j).get_si();
    auto oracle = oracle_hnf(raw);
    Hnf<Int> h = hnf(m);
    CHECK(m * h.U == h.H);
    CHECK(abs_of(det_bareiss(h.U)) == 1);
    for (std::size_t k = 0; k < h.rank(); ++k) {
      CHECK(h.H(h.pivot_rows[k], k) > 0);
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(h.H(h.pivot_rows[k], j) >= 0);
        CHECK(h.H(h.pivot_rows[k], j) < h.H(h.pivot_rows[k], k));
      }
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(h.H(i, j) == oracle[i][j]);
  }
}

TEST_CASE("gaussian hnf is unimodular with normalized pivots") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    GaussMatrix m = random_gauss_matrix(rng, 1 + rng() % 3, 1 + rng() % 3, 3);
    if (m.is_zero()) continue;
    Hnf<GaussInt> h = hnf(m);
    CHECK(m * h.U == h.H);
    CHECK(det_bareiss(h.U).norm() == 1);
    for (std::size_t k = 0; k < h.rank(); ++k) CHECK(quadrant(h.H(h.pivot_rows[k], k)) == 0);
  }
}

TEST_CASE("saturate examples") {
  IntMatrix full = saturate(IntMatrix{{2, 0}, {0, 3}});
  CHECK(full == IntMatrix::identity(2));
  CHECK(gram_det(convert<Rat>(full)) == 1);

  IntMatrix line = saturate(IntMatrix{{2}, {2}, {2}});
  CHECK(line == IntMatrix{{1}, {1}, {1}});

  IntMatrix plane = saturate(IntMatrix{{1, 1}, {-1, 0}, {0, -1}});
  CHECK(plane.cols() == 2);
  CHECK(gram_det(convert<Rat>(plane)) == 3);
  // Brute force: every integer point of the plane in [-3,3]^3 is an integral
  // combination of the output.
  int seen = 0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) {
        if (a + b + c != 0) continue;
        ++seen;
        CHECK(is_integral_combination(plane, {Int(a), Int(b), Int(c)}));
      }
  CHECK(seen == 37);
  CHECK_THROWS_AS(saturate(IntMatrix(3, 2)), std::domain_error);
}

TEST_CASE("saturation tolerates dependent columns and is idempotent") {
  std::mt19937_64 rng(3);
  CHECK(saturate(IntMatrix{{2, 4}, {2, 4}, {0, 0}}) == IntMatrix{{1}, {1}, {0}});
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 4, r = 1 + rng() % n;
    IntMatrix b = random_int_matrix(rng, n, r, 6);
    if (b.is_zero()) continue;
    IntMatrix s = saturate(b);
    CHECK(s.cols() == rank(b));
    CHECK(saturate(s) == s);
    // Every original column lies in the saturated lattice.
    for (std::size_t j = 0; j < b.cols(); ++j) CHECK(is_integral_combination(s, b.column(j)));
    // Primitive Grassmann vector.
    CHECK(maximal_minors(s).content == 1);
  }
}

TEST_CASE("gaussian saturation") {
  GaussMatrix b(2, 1);
  b(0, 0) = GaussInt(2, 2);
  b(1, 0) = GaussInt(0, 4);
  GaussMatrix s = saturate(b);
  // (2+2i, 4i) = (2+2i) * (1, 1+i)
  CHECK(s(0, 0) == GaussInt(1));
  CHECK(s(1, 0) == GaussInt(1, 1));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng() % 2, r = 1 + rng() % n;
    GaussMatrix m = random_gauss_matrix(rng, n, r, 3);
    if (m.is_zero()) continue;
    GaussMatrix sat = saturate(m);
    CHECK(saturate(sat) == sat);
    CHECK(maximal_minors(sat).content.norm() == 1);
  }
}

TEST_CASE("maximal minors examples") {
  auto g = maximal_minors(IntMatrix{{1, 0}, {-1, 1}, {0, -1}});
  CHECK(g.coords == std::vector<Int>{1, -1, 1});
  CHECK(maximal_minors(IntMatrix{{1, 0}, {0, 1}, {0, 0}}).coords == std::vector<Int>{1, 0, 0});
  auto h = maximal_minors(IntMatrix{{1, 4}, {2, 5}, {3, 6}});
  CHECK(h.coords == std::vector<Int>{1, 2, 1});
  CHECK(h.content == -3);
  CHECK_THROWS_WITH_AS(maximal_minors(IntMatrix{{1, 2}, {2, 4}, {3, 6}}), "degenerate basis", std::domain_error);
}

TEST_CASE("maximal minors change by det(T) under a change of basis") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 4, j = 1 + rng() % (n - 1);
    IntMatrix x = random_int_matrix(rng, n, j, 5);
    IntMatrix t = random_int_matrix(rng, j, j, 3);
    if (rank(x) < j || det_bareiss(t) == 0) continue;
    auto gx = maximal_minors(x);
    auto gxt = maximal_minors(x * t);
    CHECK(gx.coords == gxt.coords);
    CHECK(gxt.content == gx.content * det_bareiss(t));
  }
}

TEST_CASE("gram determinant examples and Cauchy-Binet") {
  CHECK(gram_det(RatMatrix::identity(2)) == 1);
  CHECK(gram_det(RatMatrix{{1, 0}, {-1, 1}, {0, -1}}) == 3);
  CHECK(gram_det(RatMatrix{{1, 0}, {0, 1}, {0, -1}, {1, 0}}) == 4);
  CHECK_THROWS_AS(gram_det(RatMatrix{{1, 2}, {2, 4}}), std::domain_error);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 4, j = 1 + rng() % n;
    IntMatrix x = random_int_matrix(rng, n, j, 5);
    if (rank(x) < j) continue;
    Rat sum(0);
    for (const auto& m : raw_minors(convert<Rat>(x))) sum += m * m;
    CHECK(gram_det(convert<Rat>(x)) == sum);
  }
}

TEST_CASE("kernel is saturated and annihilated") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + rng() % 3, c = 2 + rng() % 3;
    IntMatrix m = random_int_matrix(rng, r, c, 5);
    IntMatrix k = kernel(m);
    CHECK(k.cols() + rank(m) == c);
    if (k.cols() == 0) continue;
    CHECK((m * k).is_zero());
    CHECK(saturate(k) == hnf(k).H);
  }
}

TEST_CASE("determinants agree between Bareiss and field elimination") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 4;
    IntMatrix m = random_int_matrix(rng, n, n, 6);
    CHECK(Rat(det_bareiss(m)) == det_field(convert<Rat>(m)));
    GaussMatrix g = random_gauss_matrix(rng, n, n, 3);
    GaussRat viaField = det_field(convert<GaussRat>(g));
    CHECK(GaussRat(det_bareiss(g)) == viaField);
  }
}

TEST_CASE("gaussian gcd") {
  CHECK(gcd(GaussInt(1, 1), GaussInt(2)) == GaussInt(1, 1));
  CHECK(gcd(GaussInt(0), GaussInt(0, 3)) == GaussInt(3));
  CHECK(gcd(GaussInt(5), GaussInt(2, 1)) == GaussInt(2, 1));
  CHECK(unit_normalizer(GaussInt(0, 1)) * GaussInt(0, 1) == GaussInt(1));
}
