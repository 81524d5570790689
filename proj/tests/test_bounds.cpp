#include "siegel/bounds.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace siegel;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();
const FieldDescriptor kQI = FieldDescriptor::gaussian();

// Upper bounds must enclose the long-double evaluation of the same formula and
// sit within a tight relative distance of it.
void check_close(const BoundValue& b, long double expected) {
  const long double up = b.upper.get_d();
  CHECK(up >= expected * (1 - 1e-15L));
  CHECK(std::fabs(static_cast<double>(up - expected)) <= 1e-12 * static_cast<double>(std::fabs(expected)) + 1e-15);
}

BoundParams params(const FieldDescriptor& f, int N, int w, int s, Rat hw, std::vector<SubspaceDatum> vs) {
  BoundParams p;
  p.field = f;
  p.N = N;
  p.w = w;
  p.s = s;
  p.height_sq_W = std::move(hw);
  p.vs = std::move(vs);
  return p;
}

Rat dyadic_ulp(unsigned bits) {
  Int den = 1;
  den <<= bits;
  return Rat(1, den);
}

}  // namespace

TEST_CASE("interval enclosures") {
  Interval two(2L, 200);
  Interval r = two.sqrt();
  CHECK(r.lower_dyadic(64) < Rat(14142135623730951, 10000000000000000));
  CHECK(r.upper_dyadic(64) > Rat(14142135623730950, 10000000000000000));
  Interval sq = r * r;
  CHECK(sq.lower_dyadic(64) <= 2);
  CHECK(sq.upper_dyadic(64) >= 2);
  CHECK(Interval(Rat(1, 3), 100).upper_dyadic(10) == Rat(171, 512));
  CHECK(Interval(Rat(1, 3), 100).lower_dyadic(10) == Rat(341, 1024));
  CHECK(Interval(8L, 100).pow(2, 3).upper_dyadic(64) == 4);
  CHECK(Interval(4L, 100).pow(-1, 2).upper_dyadic(64) == Rat(1, 2));
  CHECK_THROWS_AS(Interval(-1L, 100).sqrt(), std::domain_error);
  CHECK_THROWS_AS(two / Interval(0L, 100), std::domain_error);
  Interval neg = Interval(-3L, 100) * Interval(Rat(1, 2), 100);
  CHECK(neg.negative());
  CHECK(neg.clamp_nonnegative().upper_dyadic(8) == 0);
}

TEST_CASE("siegel bound examples") {
  check_close(siegel_bound(kQ, 3, 2, 3), std::sqrt(3.0L) * std::pow(3.0L, 0.25L));
  CHECK(siegel_bound(kQ, 1, 1, 1).upper == 1);
  CHECK(siegel_bound(FieldDescriptor::symbolic(2, 0, 1, 4), 2, 1, 1).upper == 2);
  CHECK_THROWS_AS(siegel_bound(kQ, 2, 3, 1), std::invalid_argument);
}

TEST_CASE("main constant examples") {
  BoundValue c = main_constant(kQ, 2, 2, 1);
  check_close(c, 1024 * std::sqrt(2.0L));
  CHECK(main_constant(FieldDescriptor::symbolic(1, 1, 0, 1), 2, 2, 1).upper == c.upper);
  // (16w)^w binom(N,l)^(1/2) with w = 2, N = 2.
  check_close(c, 32.0L * 32.0L * std::sqrt(2.0L));
  CHECK_THROWS_AS(main_constant(kQ, 2, 2, 2), std::invalid_argument);
}

TEST_CASE("main bound examples") {
  auto p = params(kQ, 2, 2, 1, 1, {{1, 1}, {1, 1}});
  BoundValue b = main_bound(p);
  check_close(b, 1024 * std::sqrt(2.0L) * (2 + std::sqrt(2.0L)));
  CHECK(b.approx == doctest::Approx(4944.31).epsilon(1e-6));
  check_close(main_bound(params(kQ, 2, 2, 1, 1, {{1, 100}})), 1024 * std::sqrt(2.0L) * (0.1L + 1));
  CHECK_THROWS_AS(main_bound(params(kQ, 2, 2, 1, 1, {})), std::invalid_argument);
  CHECK_THROWS_AS(main_bound(params(kQ, 3, 3, 1, 1, {{2, 1}})), std::invalid_argument);
}

TEST_CASE("theorem radii examples") {
  TheoremRadii q = theorem31_R1_R2(params(kQ, 2, 2, 1, 1, {{1, 1}, {1, 1}}));
  // C1 = 2^5 * 2^2 = 128, C2 = sqrt(2).
  check_close(q.R1, 129 * 3 * std::sqrt(2.0L));
  CHECK(q.R2.upper == 4);
  CHECK(q.max().formula == "R1");

  TheoremRadii g = theorem31_R1_R2(params(kQI, 2, 2, 1, 1, {{1, 1}}));
  const long double c1 = std::pow(4.0L, 1.75L) * 32;
  const long double c2 = 2 * std::sqrt(6.0L) / 2;
  check_close(g.R1, (c1 + 1) * (std::pow(c2, 0.5L) + 1));
  CHECK(g.R2.upper == 16);
  CHECK_THROWS_AS(theorem31_R1_R2(params(kQ, 2, 1, 1, 1, {{1, 1}})), std::invalid_argument);
}

TEST_CASE("rational case, inverse and extension examples") {
  check_close(rational_case_bound(2, 2, 1, 1, {1, 1}), 1024 * std::sqrt(2.0L) * (2 + std::sqrt(2.0L)));
  check_close(rational_case_bound(3, 2, 1, 3, {2}), 1024 * 3 * (1 / std::sqrt(2.0L) + 1));
  CHECK_THROWS_AS(rational_case_bound(2, 2, 1, 1, {}), std::invalid_argument);

  check_close(inverse_siegel_bound(kQ, 2, 3), 3072 * std::sqrt(2.0L));
  check_close(inverse_siegel_bound(kQ, 2, 1), 1024 * std::sqrt(2.0L));
  check_close(inverse_siegel_bound(kQI, 2, 1), 2048 * 16 * std::pow(6.0L, 0.25L));
  CHECK_THROWS_AS(inverse_siegel_bound(kQ, 2, 0), std::invalid_argument);

  check_close(extension_bound(kQ, 2, 2, 1, 1), 2048 * std::sqrt(2.0L));
  check_close(extension_bound(kQ, 2, 2, 1, 10000), 1024 * std::sqrt(2.0L) * 1.01L);
  CHECK_THROWS_AS(extension_bound(kQ, 2, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("adelic bound examples") {
  AdelicBoundValue a = adelic_bounds(kQ, 3, 2, 3, 1);
  CHECK(a.lower == 0);
  CHECK(a.upper.get_d() == doctest::Approx(5 + 3 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(a.upper >= 7);
  for (long R = 1; R <= 6; ++R) CHECK(adelic_bounds(kQ, 1, 1, 1, R * R).upper == 2 * R + 1);
  AdelicBoundValue g = adelic_bounds(kQI, 2, 1, 2, 1);
  CHECK(g.lower <= 5);
  CHECK(g.upper >= 5);
  CHECK(g.upper.get_d() == doctest::Approx((std::sqrt(6.0) * std::pow(2, 1.5) / 4 + 1) * (std::pow(2, 1.5) + 1)));
  // A large radius makes the lower side positive.
  AdelicBoundValue big = adelic_bounds(kQ, 2, 1, 1, 10000);
  CHECK(big.lower > 0);
  CHECK(big.lower <= big.upper);
}

TEST_CASE("specialization to the rational case agrees within one ulp") {
  std::mt19937_64 rng(53);
  const Rat ulp = dyadic_ulp(64);
  for (int trial = 0; trial < 100; ++trial) {
    int N = 2 + static_cast<int>(rng() % 5);
    int w = 2 + static_cast<int>(rng() % (N - 1));
    int M = 1 + static_cast<int>(rng() % 4);
    Rat hw(1 + static_cast<long>(rng() % 50));
    std::vector<SubspaceDatum> vs;
    std::vector<Rat> hv;
    for (int i = 0; i < M; ++i) {
      Rat h(1 + static_cast<long>(rng() % 30));
      vs.push_back({1 + static_cast<int>(rng() % (w - 1)), h});
      hv.push_back(h);
    }
    BoundValue a = main_bound(params(kQ, N, w, w - 1, hw, vs));
    BoundValue b = rational_case_bound(N, w, N / 2, hw, hv);
    CHECK(abs_of(a.upper - b.upper) <= ulp);
  }
}

TEST_CASE("bounds are monotone in M and the heights") {
  for (int N = 2; N <= 4; ++N)
    for (int w = 2; w <= N; ++w)
      for (const auto& f : {kQ, kQI}) {
        Rat prev_main = 0, prev_r1 = 0;
        for (long hw = 1; hw <= 9; hw += 2) {
          auto p = params(f, N, w, w - 1, hw, {{1, 4}});
          BoundValue m = main_bound(p);
          TheoremRadii r = theorem31_R1_R2(p);
          CHECK(m.upper >= prev_main);
          CHECK(r.R1.upper >= prev_r1);
          prev_main = m.upper;
          prev_r1 = r.R1.upper;
        }
        Rat prev = 0;
        for (int M = 1; M <= 5; ++M) {
          auto p = params(f, N, w, w - 1, 2, std::vector<SubspaceDatum>(M, {1, 3}));
          CHECK(main_bound(p).upper >= prev);
          prev = main_bound(p).upper;
          CHECK(inverse_siegel_bound(f, N, M + 1).upper >= inverse_siegel_bound(f, N, M).upper);
        }
        // Larger H(V) means a smaller 1/H(V) and a smaller bound.
        Rat last = 0;
        for (long hv = 20; hv >= 1; hv -= 3) {
          Rat b = main_bound(params(f, N, w, w - 1, 2, {{1, hv}})).upper;
          CHECK(b >= last);
          last = b;
          CHECK(extension_bound(f, N, w, 2, hv).upper >= extension_bound(f, N, w, 2, hv + 1).upper);
        }
      }
}

TEST_CASE("doubling the precision never exceeds the stored upper bound") {
  std::mt19937_64 rng(59);
  BoundOptions lo{64}, hi{128};
  for (int trial = 0; trial < 60; ++trial) {
    const FieldDescriptor& f = trial % 2 ? kQI : kQ;
    int N = 2 + static_cast<int>(rng() % 4);
    int w = 2 + static_cast<int>(rng() % (N - 1));
    int s = 1 + static_cast<int>(rng() % (w - 1));
    Rat hw(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 3));
    hw.canonicalize();
    if (hw < 1) hw = 1;
    auto p = params(f, N, w, s, hw, {{s, 5}, {1, 2}});
    CHECK(main_bound(p, hi).upper <= main_bound(p, lo).upper);
    TheoremRadii a = theorem31_R1_R2(p, lo), b = theorem31_R1_R2(p, hi);
    CHECK(b.R1.upper <= a.R1.upper);
    CHECK(b.R2.upper <= a.R2.upper);
    CHECK(siegel_bound(f, N, w, hw, hi).upper <= siegel_bound(f, N, w, hw, lo).upper);
    CHECK(inverse_siegel_bound(f, N, 3, hi).upper <= inverse_siegel_bound(f, N, 3, lo).upper);
    AdelicBoundValue x = adelic_bounds(f, N, w, hw, 9, lo), y = adelic_bounds(f, N, w, hw, 9, hi);
    CHECK(y.upper <= x.upper);
    CHECK(y.lower >= x.lower);
  }
}
