#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace folddcs {

class FieldMismatch : public std::invalid_argument {
 public:
  FieldMismatch() : std::invalid_argument("operands belong to different fields") {}
};

class PrimeField;

// Element of F_p stored in canonical form 0 <= value < p. The modulus doubles
// as the field identity: two elements are compatible iff their moduli agree.
class FieldElement {
 public:
  FieldElement() = default;

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement pow(std::uint64_t e) const;
  // Throws std::domain_error on zero.
  FieldElement inv() const;

  bool operator==(const FieldElement& o) const {
    return value_ == o.value_ && modulus_ == o.modulus_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const { return std::to_string(value_); }

 private:
  friend class PrimeField;
  FieldElement(std::uint64_t v, std::uint64_t p) : value_(v), modulus_(p) {}

  void check_same(const FieldElement& o) const {
    if (modulus_ != o.modulus_) throw FieldMismatch();
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

class SeededPrng;

// F_p for an odd prime 3 <= p <= 2^62. Products are reduced through a 128-bit
// intermediate.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  FieldElement zero() const { return {0, p_}; }
  FieldElement one() const { return {1, p_}; }
  FieldElement elem(std::uint64_t v) const { return {v % p_, p_}; }
  FieldElement from_signed(std::int64_t v) const;
  // Parses a decimal string; rejects values >= p.
  FieldElement parse(const std::string& s) const;

  // Uniform over [0, p): rejection sampling on the smallest power-of-two
  // range covering p.
  FieldElement sample(SeededPrng& rng) const;

  bool contains(const FieldElement& x) const { return x.modulus() == p_; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

 private:
  std::uint64_t p_;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

using Seed = std::array<std::uint8_t, 32>;

Seed seed_from_u64(std::uint64_t v);
// SHA-256(master || le64(index)), used for per-trial seeds.
Seed derive_seed(const Seed& master, std::uint64_t index);
std::string seed_to_hex(const Seed& s);

// ChaCha20 keystream keyed by the seed, read in counter mode. Single owner.
class SeededPrng {
 public:
  explicit SeededPrng(const Seed& seed);

  std::uint64_t next_u64();

 private:
  void refill();

  Seed key_;
  std::uint32_t block_counter_ = 0;
  std::array<std::uint8_t, 64> block_{};
  std::size_t offset_ = 64;
};

// Source of verifier coins. Protocols draw all verifier randomness through
// this interface so that exhaustive experiments can script the challenges.
class Coins {
 public:
  virtual ~Coins() = default;
  virtual FieldElement draw(const PrimeField& field) = 0;

  std::vector<FieldElement> draw_many(const PrimeField& field, std::size_t n);
};

class PrngCoins final : public Coins {
 public:
  explicit PrngCoins(SeededPrng& rng) : rng_(rng) {}
  FieldElement draw(const PrimeField& field) override { return field.sample(rng_); }

 private:
  SeededPrng& rng_;
};

// Replays a fixed challenge list; throws std::out_of_range when exhausted.
class ScriptedCoins final : public Coins {
 public:
  explicit ScriptedCoins(std::vector<FieldElement> script) : script_(std::move(script)) {}
  FieldElement draw(const PrimeField& field) override;
  std::size_t consumed() const { return next_; }

 private:
  std::vector<FieldElement> script_;
  std::size_t next_ = 0;
};

}  // namespace folddcs
