#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folddcs/field.hpp"

namespace folddcs {

// Field-operation tally. Callers own the counter and pass it explicitly.
struct OpCounter {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;

  std::uint64_t total() const { return adds + muls; }
  OpCounter& operator+=(const OpCounter& o) {
    adds += o.adds;
    muls += o.muls;
    return *this;
  }
  bool operator==(const OpCounter&) const = default;
};

inline FieldElement counted_add(const FieldElement& a, const FieldElement& b, OpCounter* ops) {
  if (ops) ++ops->adds;
  return a + b;
}
inline FieldElement counted_mul(const FieldElement& a, const FieldElement& b, OpCounter* ops) {
  if (ops) ++ops->muls;
  return a * b;
}

using ExponentVector = std::vector<std::uint32_t>;

class DegreeBoundViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sparse polynomial in F[x_1..x_mu]_{d,D}. The bounds are declared metadata:
// every inserted monomial is checked against them, and D is clamped to mu*d.
// Terms are kept in lexicographic exponent order with no zero coefficients.
class MPoly {
 public:
  using TermMap = std::map<ExponentVector, FieldElement>;

  MPoly(const PrimeField& field, std::size_t arity, std::uint32_t partial_bound,
        std::uint32_t total_bound);

  static MPoly constant(const PrimeField& field, std::size_t arity, std::uint32_t partial_bound,
                        std::uint32_t total_bound, const FieldElement& c);

  const PrimeField& field() const { return field_; }
  std::size_t arity() const { return arity_; }
  std::uint32_t partial_bound() const { return d_; }
  std::uint32_t total_bound() const { return D_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * x^e, merging with an existing term. Throws DegreeBoundViolation
  // when e leaves the declared bounds and std::invalid_argument on arity
  // mismatch.
  void add_term(const ExponentVector& e, const FieldElement& c);
  FieldElement coefficient(const ExponentVector& e) const;

  bool within_bounds(const ExponentVector& e) const;
  // Actual degrees of the stored support (0 for the zero polynomial).
  std::uint32_t max_partial_degree() const;
  std::uint32_t total_degree() const;

  MPoly scaled(const FieldElement& c) const;
  MPoly plus(const MPoly& o) const;
  MPoly minus(const MPoly& o) const;

  // Canonical text form: header "mu=.. d=.. D=.. p=.." then one
  // "e1,...,emu : coeff" line per term in lexicographic order.
  std::string to_text() const;
  static MPoly from_text(const std::string& text);

  bool operator==(const MPoly& o) const {
    return field_ == o.field_ && arity_ == o.arity_ && terms_ == o.terms_;
  }

 private:
  PrimeField field_;
  std::size_t arity_;
  std::uint32_t d_;
  std::uint32_t D_;
  TermMap terms_;
};

enum class DomainKind { kUnstructured, kMultiplicativeSubgroup, kMultiplicativeCoset };

// Summation set H in F.
class Domain {
 public:
  static Domain from_points(const PrimeField& field, std::vector<FieldElement> points);
  // <generator>, which must have multiplicative order exactly `order`.
  static Domain subgroup(const PrimeField& field, const FieldElement& generator,
                         std::size_t order);
  static Domain coset(const PrimeField& field, const FieldElement& generator, std::size_t order,
                      const FieldElement& shift);

  const PrimeField& field() const { return field_; }
  const std::vector<FieldElement>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  DomainKind kind() const { return kind_; }
  bool is_multiplicative() const { return kind_ != DomainKind::kUnstructured; }
  const FieldElement& generator() const { return generator_; }
  const FieldElement& shift() const { return shift_; }
  // Z_H(x) = x^n - c with c = shift^n (1 for a subgroup).
  FieldElement vanishing_constant() const { return shift_.pow(points_.size()); }

  bool contains(const FieldElement& x) const;

 private:
  Domain(PrimeField field, std::vector<FieldElement> points, DomainKind kind,
         FieldElement generator, FieldElement shift);

  PrimeField field_;
  std::vector<FieldElement> points_;
  DomainKind kind_;
  FieldElement generator_;
  FieldElement shift_;
};

// An element of multiplicative order exactly n; throws if n does not divide p-1.
FieldElement find_subgroup_generator(const PrimeField& field, std::size_t n);

FieldElement eval(const MPoly& f, std::span<const FieldElement> point, OpCounter* ops = nullptr);

// sigma_j = sum_{a in H} a^j for j = 0..d. sigma_0 = |H| costs nothing; each
// point then costs d multiplications (running power) and d additions.
std::vector<FieldElement> power_sums(const Domain& H, std::uint32_t d, OpCounter* ops = nullptr);

// sum_{a in H^mu} f(a) as sum over terms of lambda * prod_k sigma_{e_k}.
// Each term costs mu multiplications; products are not memoised.
FieldElement sum_over_cube(const MPoly& f, std::span<const FieldElement> sigma,
                           OpCounter* ops = nullptr);
FieldElement sum_over_cube(const MPoly& f, const Domain& H, OpCounter* ops = nullptr);

// Literal enumeration of H^mu. Guarded to |H|^mu <= 2^24.
FieldElement sum_over_cube_bruteforce(const MPoly& f, const Domain& H);

// g(x) = sum_{a in H^k} f(x, a): collapses the last k variables.
MPoly partial_sum_suffix(const MPoly& f, std::span<const FieldElement> sigma, std::size_t k,
                         OpCounter* ops = nullptr);
MPoly partial_sum_suffix(const MPoly& f, const Domain& H, std::size_t k,
                         OpCounter* ops = nullptr);

// f(alpha, .) for a prefix alpha with |alpha| < mu.
MPoly partial_eval_prefix(const MPoly& f, std::span<const FieldElement> alpha,
                          OpCounter* ops = nullptr);

// z*f0 + f1 with bounds the componentwise max of the inputs.
MPoly fold(const FieldElement& z, const MPoly& f0, const MPoly& f1, OpCounter* ops = nullptr);

// Each admissible exponent vector enters the support with probability
// `density`, with a uniform nonzero coefficient. Large supports (over 2^16
// vectors) are sampled instead of enumerated: the expected number of terms is
// drawn as exponent vectors directly.
MPoly random_poly(const PrimeField& field, std::size_t mu, std::uint32_t d, std::uint32_t D,
                  double density, SeededPrng& rng);
// Exactly min(n_terms, |support|) distinct random admissible monomials.
MPoly random_poly_terms(const PrimeField& field, std::size_t mu, std::uint32_t d,
                        std::uint32_t D, std::size_t n_terms, SeededPrng& rng);

// Number of exponent vectors with entries <= d summing to <= D (saturating).
std::uint64_t count_admissible(std::size_t mu, std::uint32_t d, std::uint32_t D);

// Univariate helpers on arity-1 MPolys.
std::uint32_t univariate_degree(const MPoly& f);
std::vector<FieldElement> univariate_coefficients(const MPoly& f);
MPoly univariate_from_coefficients(const PrimeField& field, std::span<const FieldElement> coeffs,
                                   std::uint32_t degree_bound);

}  // namespace folddcs
