#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "folddcs/field.hpp"

using namespace folddcs;

namespace {

std::uint64_t mulmod_ref(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  // Double-and-add: no 128-bit arithmetic involved.
  std::uint64_t r = 0;
  a %= p;
  while (b) {
    if (b & 1) r = (r >= p - a) ? r - (p - a) : r + a;
    a = (a >= p - a) ? a - (p - a) : a + a;
    b >>= 1;
  }
  return r;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Field, SmallFieldExamples) {
  const PrimeField F3(3), F5(5);
  EXPECT_EQ(F3.elem(2) + F3.elem(2), F3.elem(1));
  for (std::uint64_t x = 0; x < 3; ++x) EXPECT_EQ(F3.zero() + F3.elem(x), F3.elem(x));
  EXPECT_EQ(F5.elem(4) + F5.elem(4), F5.elem(3));
  EXPECT_EQ(F3.elem(2).inv(), F3.elem(2));
  EXPECT_EQ(F5.elem(2).pow(4), F5.one());
  EXPECT_EQ(F5.elem(1) - F5.elem(3), F5.elem(3));
  EXPECT_EQ(-F5.elem(2), F5.elem(3));
  EXPECT_EQ(-F5.zero(), F5.zero());
}

TEST(Field, ArithmeticAgainstReference) {
  for (std::uint64_t p : {7ull, 65537ull, 3221225473ull, 2305843009213693951ull,
                          4611686018427387847ull}) {
    const PrimeField F(p);
    SeededPrng rng(seed_from_u64(p));
    for (int i = 0; i < 500; ++i) {
      const FieldElement a = F.sample(rng), b = F.sample(rng);
      EXPECT_EQ((a * b).value(), mulmod_ref(a.value(), b.value(), p));
      EXPECT_EQ((a + b).value(), (a.value() + b.value()) % p);  // p < 2^63
      EXPECT_EQ((a - b + b), a);
      if (!a.is_zero()) EXPECT_EQ(a * a.inv(), F.one());
    }
  }
}

TEST(Field, PowMatchesRepeatedProduct) {
  const PrimeField F(101);
  for (std::uint64_t x = 0; x < 101; ++x) {
    FieldElement acc = F.one();
    for (std::uint64_t e = 0; e < 12; ++e) {
      EXPECT_EQ(F.elem(x).pow(e), acc);
      acc *= F.elem(x);
    }
  }
}

TEST(Field, InverseOfZeroThrows) {
  EXPECT_THROW(PrimeField(7).zero().inv(), std::domain_error);
}

TEST(Field, MixedFieldsThrow) {
  const PrimeField F7(7), F11(11);
  EXPECT_THROW(F7.one() + F11.one(), FieldMismatch);
  EXPECT_THROW(F7.one() * F11.one(), FieldMismatch);
}

TEST(Field, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(2), std::invalid_argument);
  EXPECT_THROW(PrimeField(9), std::invalid_argument);
  EXPECT_THROW(PrimeField((1ull << 62) + 135), std::invalid_argument);
}

TEST(Field, MillerRabinMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime_u64(n), trial_division_prime(n)) << n;
  }
  EXPECT_TRUE(is_prime_u64(2305843009213693951ull));
  EXPECT_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_TRUE(is_prime_u64(18446744073709551557ull));
}

TEST(Field, ParseAndSigned) {
  const PrimeField F(11);
  EXPECT_EQ(F.parse("10"), F.elem(10));
  EXPECT_THROW(F.parse("11"), std::invalid_argument);
  EXPECT_THROW(F.parse("x"), std::invalid_argument);
  EXPECT_EQ(F.from_signed(-1), F.elem(10));
}

TEST(Prng, GoldenKeystreamAndSamples) {
  std::ifstream is(std::string(FOLDDCS_FIXTURES) + "/prng_golden.txt");
  ASSERT_TRUE(is.good());
  std::string line;
  int checked = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "u64") {
      std::uint64_t s, v;
      ls >> s;
      SeededPrng rng(seed_from_u64(s));
      while (ls >> v) EXPECT_EQ(rng.next_u64(), v);
    } else if (kind == "derive") {
      std::uint64_t s, i;
      std::string hex;
      ls >> s >> i >> hex;
      EXPECT_EQ(seed_to_hex(derive_seed(seed_from_u64(s), i)), hex);
    } else if (kind == "sample") {
      std::uint64_t s, p, v;
      ls >> s >> p;
      const PrimeField F(p);
      SeededPrng rng(seed_from_u64(s));
      while (ls >> v) EXPECT_EQ(F.sample(rng).value(), v);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(Prng, SameSeedSameSequence) {
  SeededPrng a(seed_from_u64(5)), b(seed_from_u64(5)), c(seed_from_u64(6));
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs = differs || x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(Prng, UniformOverF3) {
  const PrimeField F(3);
  SeededPrng rng(seed_from_u64(0));
  std::map<std::uint64_t, int> counts;
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[F.sample(rng).value()];
  for (std::uint64_t v = 0; v < 3; ++v) {
    EXPECT_NEAR(counts[v] / static_cast<double>(n), 1.0 / 3.0, 0.02);
  }
}

TEST(Coins, ScriptedReplaysThenThrows) {
  const PrimeField F(7);
  ScriptedCoins coins({F.elem(3), F.elem(5)});
  EXPECT_EQ(coins.draw(F), F.elem(3));
  EXPECT_EQ(coins.draw(F), F.elem(5));
  EXPECT_EQ(coins.consumed(), 2u);
  EXPECT_THROW(coins.draw(F), std::out_of_range);
}
