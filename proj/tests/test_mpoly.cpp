#include <gtest/gtest.h>

#include "folddcs/mpoly.hpp"

using namespace folddcs;

namespace {

MPoly x_plus_y(const PrimeField& F) {
  MPoly f(F, 2, 1, 1);
  f.add_term({1, 0}, F.one());
  f.add_term({0, 1}, F.one());
  return f;
}

Domain zero_one(const PrimeField& F) { return Domain::from_points(F, {F.elem(0), F.elem(1)}); }

// Direct evaluation: sum over terms of c * prod x_i^e_i with pow().
FieldElement eval_ref(const MPoly& f, const std::vector<FieldElement>& x) {
  FieldElement acc = f.field().zero();
  for (const auto& [e, c] : f.terms()) {
    FieldElement t = c;
    for (std::size_t i = 0; i < e.size(); ++i) t *= x[i].pow(e[i]);
    acc += t;
  }
  return acc;
}

std::vector<FieldElement> random_point(const PrimeField& F, std::size_t n, SeededPrng& rng) {
  std::vector<FieldElement> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(F.sample(rng));
  return x;
}

}  // namespace

TEST(MPoly, BoundsAreEnforced) {
  const PrimeField F(7);
  MPoly f(F, 2, 2, 3);
  EXPECT_NO_THROW(f.add_term({2, 1}, F.one()));
  EXPECT_THROW(f.add_term({3, 0}, F.one()), DegreeBoundViolation);
  EXPECT_THROW(f.add_term({2, 2}, F.one()), DegreeBoundViolation);
  EXPECT_THROW(f.add_term({1}, F.one()), std::invalid_argument);
  EXPECT_EQ(MPoly(F, 3, 1, 10).total_bound(), 3u);
  EXPECT_THROW(MPoly(F, 0, 1, 1), std::invalid_argument);
}

TEST(MPoly, ZeroCoefficientsCancel) {
  const PrimeField F(7);
  MPoly f(F, 1, 2, 2);
  f.add_term({1}, F.elem(3));
  f.add_term({1}, F.elem(4));
  EXPECT_TRUE(f.is_zero());
}

TEST(MPoly, TextRoundtrip) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(1));
  for (int i = 0; i < 30; ++i) {
    const MPoly f = random_poly(F, 3, 2, 5, 0.4, rng);
    const MPoly g = MPoly::from_text(f.to_text());
    EXPECT_EQ(f, g);
    EXPECT_EQ(g.partial_bound(), 2u);
    EXPECT_EQ(g.total_bound(), 5u);
  }
  EXPECT_THROW(MPoly::from_text("mu=2 d=1\n"), std::invalid_argument);
}

TEST(MPoly, EvalExamples) {
  const PrimeField F(3);
  const MPoly f = x_plus_y(F);
  const FieldElement pt[2] = {F.elem(1), F.elem(2)};
  EXPECT_EQ(eval(f, pt), F.zero());
  EXPECT_EQ(eval(MPoly(F, 2, 1, 1), pt), F.zero());
  for (std::uint64_t a = 0; a < 3; ++a) {
    const FieldElement p0[2] = {F.elem(a), F.zero()}, p1[2] = {F.elem(a), F.one()};
    EXPECT_EQ(eval(f, p0) + eval(f, p1), F.elem(2 * a + 1));
  }
}

TEST(MPoly, EvalMatchesReference) {
  const PrimeField F(65537);
  SeededPrng rng(seed_from_u64(2));
  for (int i = 0; i < 100; ++i) {
    const MPoly f = random_poly(F, 4, 3, 7, 0.3, rng);
    const auto x = random_point(F, 4, rng);
    EXPECT_EQ(eval(f, x), eval_ref(f, x));
  }
}

TEST(PowerSums, Examples) {
  const PrimeField F3(3), F5(5);
  EXPECT_EQ(power_sums(zero_one(F3), 1), (std::vector<FieldElement>{F3.elem(2), F3.elem(1)}));
  const Domain H5 = Domain::from_points(F5, {F5.elem(0), F5.elem(1), F5.elem(2)});
  EXPECT_EQ(power_sums(H5, 2), (std::vector<FieldElement>{F5.elem(3), F5.elem(3), F5.elem(0)}));
  const Domain sub = Domain::subgroup(F5, F5.elem(4), 2);
  const auto s = power_sums(sub, 6);
  for (std::size_t j = 0; j <= 6; ++j) EXPECT_EQ(s[j], F5.elem(j % 2 ? 0 : 2)) << j;
}

TEST(PowerSums, CostIsTwoDPerPoint) {
  const PrimeField F(101);
  const Domain H = Domain::from_points(F, {F.elem(3), F.elem(5), F.elem(7), F.elem(9)});
  OpCounter ops;
  power_sums(H, 3, &ops);
  EXPECT_EQ(ops.muls, 12u);
  EXPECT_EQ(ops.adds, 12u);
}

TEST(SumOverCube, Examples) {
  const PrimeField F(3);
  const Domain H = zero_one(F);
  EXPECT_EQ(sum_over_cube(x_plus_y(F), H), F.one());
  EXPECT_EQ(sum_over_cube_bruteforce(x_plus_y(F), H), F.one());
  EXPECT_EQ(sum_over_cube(MPoly(F, 3, 1, 3), H), F.zero());
  const PrimeField F7(7);
  const Domain H7 = Domain::from_points(F7, {F7.elem(1), F7.elem(2), F7.elem(6)});
  const MPoly c = MPoly::constant(F7, 3, 2, 2, F7.elem(5));
  EXPECT_EQ(sum_over_cube_bruteforce(c, H7), F7.elem(5 * 27));
}

TEST(SumOverCube, MatchesBruteForce) {
  SeededPrng rng(seed_from_u64(3));
  for (int i = 0; i < 50; ++i) {
    const PrimeField F(i % 2 ? 13 : 101);
    const std::size_t mu = 1 + rng.next_u64() % 4;
    const auto d = static_cast<std::uint32_t>(rng.next_u64() % 4);
    std::vector<FieldElement> pts;
    const std::size_t h = 2 + rng.next_u64() % 3;
    for (std::size_t k = 0; k < h; ++k) pts.push_back(F.elem(3 * k + 1));
    const Domain H = Domain::from_points(F, pts);
    const MPoly f = random_poly(F, mu, d, static_cast<std::uint32_t>(mu * d), 0.5, rng);
    EXPECT_EQ(sum_over_cube(f, H), sum_over_cube_bruteforce(f, H));
  }
}

TEST(SumOverCube, CostIsMuPerTerm) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(4));
  const MPoly f = random_poly_terms(F, 4, 2, 8, 9, rng);
  const auto sigma = power_sums(Domain::from_points(F, {F.elem(1), F.elem(2), F.elem(3)}), 2);
  OpCounter ops;
  sum_over_cube(f, sigma, &ops);
  EXPECT_EQ(ops.muls, 4u * 9u);
  EXPECT_EQ(ops.adds, 8u);
}

TEST(PartialSumSuffix, Examples) {
  const PrimeField F(3);
  const MPoly g = partial_sum_suffix(x_plus_y(F), zero_one(F), 1);
  MPoly want(F, 1, 1, 1);
  want.add_term({1}, F.elem(2));
  want.add_term({0}, F.one());
  EXPECT_EQ(g, want);

  // Independent of the last k variables: multiplied by |H|^k.
  const PrimeField F7(7);
  const Domain H = Domain::from_points(F7, {F7.elem(0), F7.elem(2), F7.elem(3)});
  MPoly f(F7, 3, 2, 2);
  f.add_term({2, 0, 0}, F7.elem(4));
  f.add_term({0, 0, 0}, F7.elem(1));
  MPoly r(F7, 1, 2, 2);
  r.add_term({2}, F7.elem(4 * 9));
  r.add_term({0}, F7.elem(9));
  EXPECT_EQ(partial_sum_suffix(f, H, 2), r);
}

TEST(PartialSumSuffix, PointwiseAgainstEnumeration) {
  const PrimeField F(97);
  const Domain H = Domain::from_points(F, {F.elem(2), F.elem(5), F.elem(11)});
  SeededPrng rng(seed_from_u64(5));
  for (int i = 0; i < 10; ++i) {
    const MPoly f = random_poly(F, 3, 2, 4, 0.5, rng);
    const MPoly g = partial_sum_suffix(f, H, 2);
    for (int t = 0; t < 10; ++t) {
      const FieldElement x = F.sample(rng);
      FieldElement want = F.zero();
      for (const auto& a : H.points()) {
        for (const auto& b : H.points()) {
          const FieldElement pt[3] = {x, a, b};
          want += eval(f, pt);
        }
      }
      const FieldElement gx[1] = {x};
      EXPECT_EQ(eval(g, gx), want);
    }
  }
}

TEST(PartialEvalPrefix, Examples) {
  const PrimeField F(3);
  const FieldElement alpha[1] = {F.elem(2)};
  MPoly want(F, 1, 1, 1);
  want.add_term({0}, F.elem(2));
  want.add_term({1}, F.one());
  EXPECT_EQ(partial_eval_prefix(x_plus_y(F), alpha), want);

  const PrimeField F7(7);
  MPoly f(F7, 2, 2, 3);
  f.add_term({1, 2}, F7.elem(3));
  f.add_term({0, 1}, F7.elem(5));
  const FieldElement zero[1] = {F7.zero()};
  MPoly z(F7, 1, 2, 3);
  z.add_term({1}, F7.elem(5));
  EXPECT_EQ(partial_eval_prefix(f, zero), z);
}

TEST(PartialEvalPrefix, Composition) {
  const PrimeField F(10007);
  SeededPrng rng(seed_from_u64(6));
  for (int i = 0; i < 20; ++i) {
    const MPoly f = random_poly(F, 4, 3, 6, 0.2, rng);
    const std::size_t j = 1 + rng.next_u64() % 3;
    const auto alpha = random_point(F, j, rng);
    const auto b = random_point(F, 4 - j, rng);
    std::vector<FieldElement> full = alpha;
    full.insert(full.end(), b.begin(), b.end());
    EXPECT_EQ(eval(partial_eval_prefix(f, alpha), b), eval(f, full));
  }
}

TEST(Fold, Examples) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(7));
  const MPoly f0 = random_poly(F, 2, 2, 4, 0.5, rng);
  const MPoly f1 = random_poly(F, 2, 2, 4, 0.5, rng);
  EXPECT_EQ(fold(F.zero(), f0, f1), f1);
  EXPECT_EQ(fold(F.one(), f0, MPoly(F, 2, 2, 4)), f0);
  for (int i = 0; i < 20; ++i) {
    const FieldElement z = F.sample(rng);
    const auto x = random_point(F, 2, rng);
    EXPECT_EQ(eval(fold(z, f0, f1), x), z * eval(f0, x) + eval(f1, x));
  }
}

TEST(RandomPoly, ShapeAndDeterminism) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(8));
  EXPECT_TRUE(random_poly(F, 3, 2, 4, 0.0, rng).is_zero());
  for (int i = 0; i < 100; ++i) {
    const MPoly f = random_poly(F, 3, 2, 4, 0.3, rng);
    EXPECT_LE(f.max_partial_degree(), 2u);
    EXPECT_LE(f.total_degree(), 4u);
  }
  SeededPrng a(seed_from_u64(9)), b(seed_from_u64(9));
  EXPECT_EQ(random_poly(F, 3, 2, 4, 0.5, a), random_poly(F, 3, 2, 4, 0.5, b));
  SeededPrng c(seed_from_u64(10));
  EXPECT_EQ(random_poly_terms(F, 4, 2, 5, 7, c).num_terms(), 7u);
  EXPECT_EQ(random_poly_terms(F, 1, 2, 2, 10, c).num_terms(), 3u);
}

TEST(CountAdmissible, MatchesEnumeration) {
  for (std::size_t mu = 1; mu <= 4; ++mu) {
    for (std::uint32_t d = 0; d <= 3; ++d) {
      for (std::uint32_t D = 0; D <= mu * d; ++D) {
        std::uint64_t total = 1, brute = 0;
        for (std::size_t j = 0; j < mu; ++j) total *= d + 1;
        for (std::uint64_t code = 0; code < total; ++code) {
          std::uint64_t k = code, s = 0;
          for (std::size_t j = 0; j < mu; ++j, k /= d + 1) s += k % (d + 1);
          brute += s <= D;
        }
        EXPECT_EQ(count_admissible(mu, d, D), brute);
      }
    }
  }
}

TEST(Domain, SubgroupAndCoset) {
  const PrimeField F(13);
  const FieldElement g = find_subgroup_generator(F, 4);
  EXPECT_EQ(g.pow(4), F.one());
  EXPECT_NE(g.pow(2), F.one());
  const Domain H = Domain::subgroup(F, g, 4);
  EXPECT_EQ(H.size(), 4u);
  EXPECT_TRUE(H.is_multiplicative());
  const Domain C = Domain::coset(F, g, 4, F.elem(2));
  for (const auto& x : C.points()) EXPECT_EQ(x.pow(4), F.elem(2).pow(4));
  EXPECT_THROW(find_subgroup_generator(F, 5), std::invalid_argument);
  EXPECT_THROW(Domain::subgroup(F, g, 2), std::invalid_argument);
  EXPECT_THROW(Domain::from_points(F, {F.one(), F.one()}), std::invalid_argument);
  EXPECT_THROW(Domain::from_points(F, {F.one()}), std::invalid_argument);
}

TEST(Univariate, CoefficientHelpers) {
  const PrimeField F(11);
  const std::vector<FieldElement> c = {F.elem(1), F.zero(), F.elem(4)};
  const MPoly u = univariate_from_coefficients(F, c, 3);
  EXPECT_EQ(univariate_degree(u), 2u);
  EXPECT_EQ(univariate_coefficients(u), c);
}
