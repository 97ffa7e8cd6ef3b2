#include "folddcs/field.hpp"

#include <sodium.h>

#include <bit>
#include <charconv>
#include <cstring>
#include <ostream>

namespace folddcs {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  std::uint64_t s = value_ + o.value_;  // p <= 2^62, no overflow
  if (s >= modulus_) s -= modulus_;
  return {s, modulus_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  std::uint64_t s = value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_;
  return {s, modulus_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {mulmod(value_, o.value_, modulus_), modulus_};
}

FieldElement FieldElement::operator-() const {
  return {value_ == 0 ? 0 : modulus_ - value_, modulus_};
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  return {powmod(value_, e, modulus_), modulus_};
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw std::domain_error("inversion of zero");
  return pow(modulus_ - 2);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
  return os << x.value();
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set below 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                          1795265022ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3) throw std::invalid_argument("modulus must be an odd prime >= 3");
  if (p > kMaxModulus) throw std::invalid_argument("modulus exceeds 2^62");
  if (!is_prime_u64(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }
}

FieldElement PrimeField::from_signed(std::int64_t v) const {
  auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return {static_cast<std::uint64_t>(r), p_};
}

FieldElement PrimeField::parse(const std::string& s) const {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed field element '" + s + "'");
  }
  if (v >= p_) throw std::invalid_argument("field element '" + s + "' is not reduced");
  return {v, p_};
}

FieldElement PrimeField::sample(SeededPrng& rng) const {
  const std::uint64_t mask = std::bit_ceil(p_) - 1;
  for (;;) {
    std::uint64_t v = rng.next_u64() & mask;
    if (v < p_) return {v, p_};
  }
}

Seed seed_from_u64(std::uint64_t v) {
  Seed s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

Seed derive_seed(const Seed& master, std::uint64_t index) {
  ensure_sodium();
  std::array<std::uint8_t, 40> buf{};
  std::memcpy(buf.data(), master.data(), master.size());
  for (int i = 0; i < 8; ++i) buf[32 + i] = static_cast<std::uint8_t>(index >> (8 * i));
  Seed out{};
  crypto_hash_sha256(out.data(), buf.data(), buf.size());
  return out;
}

std::string seed_to_hex(const Seed& s) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (auto b : s) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

SeededPrng::SeededPrng(const Seed& seed) : key_(seed) { ensure_sodium(); }

void SeededPrng::refill() {
  static const std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> kNonce{};
  block_.fill(0);
  crypto_stream_chacha20_ietf_xor_ic(block_.data(), block_.data(), block_.size(),
                                     kNonce.data(), block_counter_, key_.data());
  ++block_counter_;
  if (block_counter_ == 0) throw std::runtime_error("prng keystream exhausted");
  offset_ = 0;
}

std::uint64_t SeededPrng::next_u64() {
  if (offset_ + 8 > block_.size()) refill();
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{block_[offset_ + i]} << (8 * i);
  offset_ += 8;
  return v;
}

std::vector<FieldElement> Coins::draw_many(const PrimeField& field, std::size_t n) {
  std::vector<FieldElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(field));
  return out;
}

FieldElement ScriptedCoins::draw(const PrimeField& field) {
  if (next_ >= script_.size()) throw std::out_of_range("scripted coins exhausted");
  const FieldElement& x = script_[next_++];
  if (!field.contains(x)) throw FieldMismatch();
  return x;
}

}  // namespace folddcs
