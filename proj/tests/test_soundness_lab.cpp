#include <gtest/gtest.h>

#include "folddcs/soundness_lab.hpp"

using namespace folddcs;

namespace {

Domain points(const PrimeField& F, std::initializer_list<std::uint64_t> xs) {
  std::vector<FieldElement> v;
  for (auto x : xs) v.push_back(F.elem(x));
  return Domain::from_points(F, v);
}

MPoly x_plus_y(const PrimeField& F) {
  MPoly f(F, 2, 1, 1);
  f.add_term({1, 0}, F.one());
  f.add_term({0, 1}, F.one());
  return f;
}

}  // namespace

TEST(Ratio, LowestTerms) {
  EXPECT_EQ(make_ratio(6, 18), (Ratio{1, 3}));
  EXPECT_EQ(make_ratio(0, 5), (Ratio{0, 1}));
  EXPECT_THROW(make_ratio(1, 0), std::invalid_argument);
}

// Independent enumeration of the toy example: f0(x) = r x + t, alpha in F_3.
// Child checks: f0 sums to S = 0 over {0, 1}, and f(alpha, .) sums to f0(alpha).
TEST(F3Example, MatchesDirectEnumeration) {
  const F3Example ex = exhaustive_f3_example();
  int best = 0;
  for (int r = 0; r < 3; ++r) {
    for (int t = 0; t < 3; ++t) {
      int acc = 0;
      for (int a = 0; a < 3; ++a) {
        const bool left = (t + (r + t)) % 3 == 0;
        const bool right = ((a + 0) + (a + 1)) % 3 == (r * a + t) % 3;
        acc += left && right;
      }
      EXPECT_EQ(ex.accepted[r][t], acc) << r << "," << t;
      best = std::max(best, acc);
    }
  }
  EXPECT_EQ(ex.best, make_ratio(best, 3));
  EXPECT_EQ(ex.best, (Ratio{1, 3}));
}

TEST(LabProtocol, ParseRoundtrip) {
  for (LabProtocol p : {LabProtocol::kStd, LabProtocol::kDcs, LabProtocol::kFoldDcs,
                        LabProtocol::kFoldDcsPcs}) {
    EXPECT_EQ(parse_lab_protocol(to_string(p)), p);
  }
  EXPECT_FALSE(parse_lab_protocol("nope").has_value());
}

TEST(Strategy, ParseRoundtrip) {
  for (const char* s : {"honest", "honest-shape", "greedy", "tamper-final", "tamper-round-3"}) {
    const auto st = parse_strategy(s);
    ASSERT_TRUE(st.has_value()) << s;
    EXPECT_EQ(to_string(*st), s);
  }
  EXPECT_FALSE(parse_strategy("tamper-round-0").has_value());
  EXPECT_FALSE(parse_strategy("tamper-round-x").has_value());
}

TEST(MonteCarlo, RejectsTrueClaimsAndZeroTrials) {
  const PrimeField F(7);
  const LabInstance inst{x_plus_y(F), points(F, {0, 1}), F.elem(4)};
  EXPECT_THROW(monte_carlo(LabProtocol::kFoldDcs, Strategy{}, inst, 10, seed_from_u64(1), 1),
               TrueClaim);
  LabInstance bad = inst;
  bad.S = F.zero();
  EXPECT_THROW(monte_carlo(LabProtocol::kFoldDcs, Strategy{}, bad, 0, seed_from_u64(1), 1),
               std::invalid_argument);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  const PrimeField F(7);
  const LabInstance inst{x_plus_y(F), points(F, {0, 1}), F.zero()};
  const Strategy greedy{StrategyKind::kGreedyClaimedSum};
  const auto a = monte_carlo(LabProtocol::kFoldDcs, greedy, inst, 2000, seed_from_u64(9), 1);
  const auto b = monte_carlo(LabProtocol::kFoldDcs, greedy, inst, 2000, seed_from_u64(9), 3);
  EXPECT_EQ(a.acceptances, b.acceptances);
  EXPECT_EQ(a.trials, 2000u);
}

// Two-variable linear instance over F_7: the greedy prover gets close to the
// standard-sumcheck bound and stays below the fold bound.
TEST(MonteCarlo, TightnessConfiguration) {
  const PrimeField F(7);
  const LabInstance inst{x_plus_y(F), points(F, {0, 1}), F.zero()};
  const Strategy greedy{StrategyKind::kGreedyClaimedSum};
  const auto fold = monte_carlo(LabProtocol::kFoldDcs, greedy, inst, 20000, seed_from_u64(3));
  EXPECT_NEAR(fold.bound, 127.0 / 343.0, 1e-12);
  EXPECT_TRUE(fold.within_bound);
  EXPECT_NEAR(fold.estimate, 13.0 / 49.0, 0.03);
  const auto std_ = monte_carlo(LabProtocol::kStd, greedy, inst, 20000, seed_from_u64(4));
  EXPECT_NEAR(std_.bound, 13.0 / 49.0, 1e-12);
  EXPECT_TRUE(std_.within_bound);
  EXPECT_GT(std_.estimate, 0.2);
}

TEST(MonteCarlo, AllProtocolsWithinBounds) {
  const PrimeField F(11);
  SeededPrng rng(seed_from_u64(5));
  const Domain H = points(F, {0, 1, 2});
  const MPoly f = random_poly_terms(F, 4, 2, 4, 4, rng);
  const LabInstance inst{f, H, sum_over_cube(f, H) + F.one()};
  for (LabProtocol p : {LabProtocol::kStd, LabProtocol::kDcs, LabProtocol::kFoldDcs,
                        LabProtocol::kFoldDcsPcs}) {
    for (const char* s : {"honest", "honest-shape", "greedy", "tamper-final", "tamper-round-1"}) {
      const auto rep = monte_carlo(p, *parse_strategy(s), inst, 400, seed_from_u64(6));
      EXPECT_TRUE(rep.within_bound) << to_string(p) << " " << s << " " << rep.estimate << " > "
                                    << rep.bound;
    }
  }
}

TEST(Char2, DegeneracyStandIn) {
  const Char2Report r = characteristic2_degeneracy_check();
  EXPECT_TRUE(r.symbolic_identity);
  EXPECT_TRUE(r.four_var_sums_vanish);
  EXPECT_TRUE(r.two_var_messages_vanish);
  EXPECT_TRUE(r.greedy_blocked);
  EXPECT_TRUE(r.zero_poly_sums_to_zero);
}
