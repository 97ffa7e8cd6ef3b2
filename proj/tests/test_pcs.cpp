#include <gtest/gtest.h>

#include <set>

#include "folddcs/pcs.hpp"

using namespace folddcs;

namespace {

MPoly monomial(const PrimeField& F, ExponentVector e, std::uint32_t d, std::uint32_t D) {
  MPoly f(F, e.size(), d, D);
  f.add_term(e, F.one());
  return f;
}

FieldElement eval1(const MPoly& f, const FieldElement& x) {
  const FieldElement p[1] = {x};
  return eval(f, p);
}

}  // namespace

TEST(Multilin, Examples) {
  const PrimeField F(101);
  EXPECT_EQ(exponent_bits(3), 2u);
  EXPECT_EQ(exponent_bits(4), 3u);
  EXPECT_EQ(exponent_bits(1), 1u);
  EXPECT_EQ(multilin(monomial(F, {3}, 3, 3)), monomial(F, {1, 1}, 1, 2));
  EXPECT_EQ(multilin(monomial(F, {2}, 3, 3)), monomial(F, {0, 1}, 1, 2));
  EXPECT_EQ(multilin(monomial(F, {0}, 3, 3)), monomial(F, {0, 0}, 1, 2));
  EXPECT_EQ(multilin_inverse(monomial(F, {1, 1}, 1, 2), 1, 3, 3), monomial(F, {3}, 3, 3));
  const MPoly c = MPoly::constant(F, 2, 3, 6, F.elem(9));
  EXPECT_EQ(multilin_inverse(multilin(c), 2, 3, 6), c);
}

TEST(Multilin, RoundtripAndLinearity) {
  const PrimeField F(10007);
  SeededPrng rng(seed_from_u64(1));
  for (int i = 0; i < 100; ++i) {
    const std::size_t mu = 1 + rng.next_u64() % 3;
    const auto d = static_cast<std::uint32_t>(1 + rng.next_u64() % 5);
    const auto D = static_cast<std::uint32_t>(mu * d);
    const MPoly f = random_poly(F, mu, d, D, 0.4, rng);
    const MPoly g = random_poly(F, mu, d, D, 0.4, rng);
    EXPECT_EQ(multilin_inverse(multilin(f), mu, d, D), f);
    const FieldElement k = F.sample(rng);
    EXPECT_EQ(multilin(f.plus(g.scaled(k))), multilin(f).plus(multilin(g).scaled(k)));
  }
  EXPECT_THROW(multilin_inverse(monomial(F, {2, 0}, 2, 2), 1, 3, 3), std::invalid_argument);
  // 3 = 0b11 is outside d = 2, which still uses two bits.
  EXPECT_THROW(multilin_inverse(monomial(F, {1, 1}, 1, 2), 1, 2, 2), std::invalid_argument);
}

TEST(UMap, Examples) {
  const PrimeField F(101);
  EXPECT_EQ(univariate_coefficients(u_map(monomial(F, {1}, 1, 1))),
            (std::vector<FieldElement>{F.zero(), F.one()}));
  EXPECT_EQ(univariate_coefficients(u_map(MPoly::constant(F, 1, 1, 1, F.one()))),
            (std::vector<FieldElement>{F.one(), F.one()}));
  EXPECT_EQ(univariate_coefficients(u_map(monomial(F, {1, 1}, 1, 2))),
            (std::vector<FieldElement>{F.zero(), F.zero(), F.zero(), F.one()}));

  // h = 1 interpolates to prod (1 - y_j); h = t^(2^n - 1) to prod y_j.
  for (std::size_t n = 1; n <= 4; ++n) {
    const MPoly g = u_inverse(MPoly::constant(F, 1, 1, 1, F.one()), n);
    MPoly want = MPoly::constant(F, n, 1, static_cast<std::uint32_t>(n), F.one());
    for (std::size_t j = 0; j < n; ++j) {
      MPoly lin = MPoly::constant(F, n, 1, static_cast<std::uint32_t>(n), F.one());
      ExponentVector e(n, 0);
      e[j] = 1;
      lin.add_term(e, F.from_signed(-1));
      MPoly prod(F, n, 1, static_cast<std::uint32_t>(n));
      for (const auto& [a, ca] : want.terms()) {
        for (const auto& [b, cb] : lin.terms()) {
          ExponentVector s = a;
          for (std::size_t k = 0; k < n; ++k) s[k] += b[k];
          prod.add_term(s, ca * cb);
        }
      }
      want = prod;
    }
    EXPECT_EQ(g, want);
    std::vector<FieldElement> top((std::size_t{1} << n), F.zero());
    top.back() = F.one();
    const auto topdeg = static_cast<std::uint32_t>(top.size() - 1);
    EXPECT_EQ(u_inverse(univariate_from_coefficients(F, top, topdeg), n),
              monomial(F, ExponentVector(n, 1), 1, static_cast<std::uint32_t>(n)));
  }
  EXPECT_THROW(u_inverse(monomial(F, {4}, 4, 4), 2), std::invalid_argument);
}

TEST(UMap, CoefficientTableProperty) {
  const PrimeField F(65537);
  SeededPrng rng(seed_from_u64(2));
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.next_u64() % 6;
    const MPoly g = random_poly(F, n, 1, static_cast<std::uint32_t>(n), 0.5, rng);
    const MPoly h = u_map(g);
    EXPECT_EQ(u_inverse(h, n), g);
    auto coeffs = univariate_coefficients(h);
    coeffs.resize(std::size_t{1} << n, F.zero());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      std::vector<FieldElement> bits;
      for (std::size_t j = 0; j < n; ++j) bits.push_back(F.elem((k >> j) & 1));
      EXPECT_EQ(coeffs[k], eval(g, bits));
    }
  }
}

TEST(BasisSupport, Sizes) {
  EXPECT_EQ(enumerate_basis_support(2, 1, 1),
            (std::vector<ExponentVector>{{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(enumerate_basis_support(2, 3, 6).size(), 16u);
  EXPECT_EQ(enumerate_basis_support(3, 2, 2).size(), 10u);
  for (std::size_t mu = 1; mu <= 4; ++mu) {
    for (std::uint32_t d = 0; d <= 3; ++d) {
      for (std::uint32_t D = 0; D <= mu * d; ++D) {
        EXPECT_EQ(enumerate_basis_support(mu, d, D).size(), count_admissible(mu, d, D));
      }
    }
  }
}

TEST(MockCommit, DeterministicAndGatekept) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(3));
  const PcsParams pp = mock_setup(128, 3, 2, 4);
  EXPECT_EQ(pp.delta, 2u);
  EXPECT_EQ(pp.n, 6u);
  const MPoly f = random_poly(F, 3, 2, 4, 0.5, rng);
  EXPECT_EQ(mock_commit(pp, f), mock_commit(pp, f));
  EXPECT_TRUE(mock_open(pp, mock_commit(pp, f), f));
  EXPECT_THROW(mock_commit(pp, monomial(F, {2, 2, 1}, 2, 6)), OutsideCommitSupport);
  EXPECT_THROW(mock_commit(pp, monomial(F, {3, 0, 0}, 3, 3)), OutsideCommitSupport);
  EXPECT_FALSE(mock_open(pp, mock_commit(pp, f), monomial(F, {2, 2, 1}, 2, 6)));

  // Every support vector commits; distinct polynomials give distinct digests.
  std::set<std::string> digests;
  for (const auto& e : enumerate_basis_support(3, 2, 4)) {
    EXPECT_NO_THROW(digests.insert(mock_commit(pp, monomial(F, e, 2, 4)).hex()));
  }
  EXPECT_EQ(digests.size(), count_admissible(3, 2, 4));
  for (int i = 0; i < 200; ++i) {
    const MPoly g = random_poly(F, 3, 2, 4, 0.5, rng);
    const MPoly h = g.plus(MPoly::constant(F, 3, 2, 4, F.one()));
    EXPECT_NE(mock_commit(pp, g), mock_commit(pp, h));
  }
}

TEST(MockBatchEval, PerturbedValueExhaustiveOverGamma) {
  const PrimeField F(5);
  SeededPrng rng(seed_from_u64(4));
  const PcsParams pp = mock_setup(128, 4, 1, 4);
  std::vector<FieldElement> point;
  for (int i = 0; i < 4; ++i) point.push_back(F.sample(rng));

  // Six claims over suffixes of the point, as in a four-variable fold run.
  const std::size_t offsets[] = {0, 2, 3, 0, 2, 3};
  const std::size_t arities[] = {4, 2, 1, 2, 1, 1};
  BatchEvalClaim claim{point, {}};
  std::vector<MPoly> polys;
  for (int i = 0; i < 6; ++i) {
    const MPoly f = random_poly(F, arities[i], 1, static_cast<std::uint32_t>(arities[i]), 0.7, rng);
    std::span<const FieldElement> x(point.data() + offsets[i], arities[i]);
    claim.items.push_back({mock_commit(pp, f), offsets[i], arities[i], eval(f, x)});
    polys.push_back(f);
  }
  EXPECT_EQ(claim.ell(), 6u);
  for (std::uint64_t g = 0; g < 5; ++g) {
    ScriptedCoins coins({F.elem(g), F.elem(1), F.elem(2), F.elem(3), F.elem(4)});
    const BatchEvalOutcome out = mock_batch_eval(pp, claim, polys, coins);
    EXPECT_TRUE(out.accept);
    EXPECT_EQ(out.rounds, 3u);
  }
  for (std::size_t j = 0; j < 6; ++j) {
    BatchEvalClaim bad = claim;
    bad.items[j].value += F.one();
    int accepted = 0;
    for (std::uint64_t g = 0; g < 5; ++g) {
      ScriptedCoins coins({F.elem(g), F.elem(1), F.elem(2), F.elem(3), F.elem(4)});
      const BatchEvalOutcome out = mock_batch_eval(pp, bad, polys, coins);
      accepted += out.accept;
      EXPECT_TRUE(out.openings_ok);
    }
    // The error is gamma^j * 1: only gamma = 0 hides it, and only when j > 0.
    EXPECT_EQ(accepted, j == 0 ? 0 : 1) << j;
  }
}

TEST(MockEval, WrongOpeningRejects) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(5));
  const PcsParams pp = mock_setup(128, 2, 2, 4);
  const MPoly f = random_poly(F, 2, 2, 4, 0.6, rng);
  const MPoly g = f.plus(MPoly::constant(F, 2, 2, 4, F.one()));
  const std::vector<FieldElement> x = {F.elem(3), F.elem(8)};
  PrngCoins coins(rng);
  EXPECT_TRUE(mock_eval(pp, mock_commit(pp, f), f, x, eval(f, x), coins).accept);
  EXPECT_FALSE(mock_eval(pp, mock_commit(pp, f), g, x, eval(g, x), coins).accept);
  EXPECT_FALSE(mock_eval(pp, mock_commit(pp, f), f, x, eval(f, x) + F.one(), coins).accept);
}

TEST(FoldWithPcs, HonestRunAtMuFour) {
  const PrimeField F(101);
  SeededPrng rng(seed_from_u64(6));
  const Domain H = Domain::from_points(F, {F.elem(0), F.elem(1), F.elem(2)});
  const MPoly f = random_poly_terms(F, 4, 2, 8, 6, rng);
  const FoldInstance inst{f, H, sum_over_cube(f, H)};
  PrngCoins coins(rng);
  const PcsRunResult r = fold_dcs_with_pcs(inst, mock_setup(128, 4, 2, 8), coins);
  EXPECT_TRUE(r.run.accept);
  EXPECT_EQ(r.report.commitments.size(), 3u);
  EXPECT_FALSE(r.report.input_commitment.empty());
  EXPECT_EQ(r.report.batch_ells, (std::vector<std::size_t>{6}));
  EXPECT_TRUE(r.report.evaluations_ok);
  EXPECT_EQ(r.run.transcript.metrics().commitments, 3u);
}

TEST(FoldWithPcs, AgreesWithOracleModel) {
  const char* strategies[] = {"honest", "greedy", "tamper-final", "tamper-round-2",
                              "honest-shape"};
  for (std::uint64_t s = 0; s < 60; ++s) {
    const PrimeField F(s % 2 ? 7 : 101);
    const Domain H = Domain::from_points(F, {F.elem(1), F.elem(3), F.elem(5)});
    const std::size_t mu = s % 3 == 0 ? 2 : 4;
    SeededPrng irng(seed_from_u64(100 + s));
    const MPoly f = random_poly_terms(F, mu, 2, 4, 4, irng);
    const FieldElement S = sum_over_cube(f, H) + (s % 4 == 0 ? F.zero() : F.one());
    const Strategy strat = *parse_strategy(strategies[s % 5]);
    const FoldInstance inst{f, H, S};

    SeededPrng c1(seed_from_u64(s));
    PrngCoins coins1(c1);
    Adversary a1(strat, seed_from_u64(1000 + s));
    const RunResult oracle = run_fold_dcs(inst, coins1, &a1);

    SeededPrng c2(seed_from_u64(s));
    PrngCoins coins2(c2);
    Adversary a2(strat, seed_from_u64(1000 + s));
    const PcsRunResult pcs = fold_dcs_with_pcs(inst, mock_setup(128, mu, 2, 4), coins2, &a2);
    EXPECT_EQ(oracle.accept, pcs.run.accept) << s;
    EXPECT_EQ(oracle.final_sum, pcs.run.final_sum) << s;
  }
}
