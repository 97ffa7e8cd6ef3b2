#pragma once

#include <optional>
#include <string>

#include "folddcs/field.hpp"
#include "folddcs/mpoly.hpp"
#include "folddcs/oracle.hpp"

namespace folddcs {

enum class UniMode { kNaive, kCoefficientSide, kCosetIOP };

std::string to_string(UniMode mode);
std::optional<UniMode> parse_uni_mode(const std::string& s);

// Soundness error of the univariate check. The two deterministic modes never
// accept a false sum. For the coset protocol a false claim S' makes
// f - x*g - S'/n - Z_H*q a nonzero polynomial of degree at most
// max(d, n - 1) (deg g <= n - 2, deg q <= d - n), which vanishes at a uniform
// beta with probability at most max(d, n - 1)/q.
double uni_soundness(UniMode mode, std::uint32_t d, std::size_t n, std::uint64_t q);

// Queries the arity-1 oracle at every point of H: |H| queries and |H| - 1
// additions.
bool naive_check(OracleRegistry& reg, const OracleId& f, const Domain& H, const FieldElement& S,
                 Transcript& transcript, OpCounter* ops = nullptr);

// sum_j c_j sigma_j == S on an explicitly held univariate polynomial.
bool coefficient_side_check(const MPoly& f, std::span<const FieldElement> sigma,
                            const FieldElement& S, OpCounter* ops = nullptr);

// f(x) = x*g(x) + S/n + Z_H(x)*q(x) over a multiplicative subgroup or coset H
// of size n, with Z_H(x) = x^n - shift^n.
struct CosetWitness {
  MPoly g;
  MPoly q;
};

// Degree bounds the verifier enforces on the witness: deg g <= n - 2 and
// deg q <= d - n (q = 0 when d < n).
std::uint32_t coset_g_bound(std::size_t n);
std::uint32_t coset_q_bound(std::uint32_t d, std::size_t n);

// Quotient and remainder of f by Z_H. Returns nullopt when the remainder's
// constant term is not S/n, i.e. when S is not the sum of f over H.
std::optional<CosetWitness> coset_decompose(const MPoly& f, const Domain& H,
                                            const FieldElement& S);
// The witness for the true sum; never fails.
CosetWitness coset_decompose_true(const MPoly& f, const Domain& H);

// A witness for a false claim S: g is shifted so that the identity error
// S_true/n - S/n + x*delta(x) has n - 1 random roots. Used by cheating provers.
CosetWitness coset_forge(const MPoly& f, const Domain& H, const FieldElement& S,
                         SeededPrng& rng);

bool coset_witness_in_bounds(const CosetWitness& w, std::uint32_t d, std::size_t n);

// f(beta) == beta*g(beta) + S/n + (beta^n - shift^n)*q(beta).
bool coset_identity_holds(const FieldElement& beta, const FieldElement& f_beta,
                          const FieldElement& g_beta, const FieldElement& q_beta,
                          const Domain& H, const FieldElement& S, OpCounter* ops = nullptr);

// beta^e by square-and-multiply, counting each product.
FieldElement counted_pow(const FieldElement& base, std::uint64_t e, OpCounter* ops);

struct UniOutcome {
  bool accept = false;
  // Honest decomposition impossible and no forged witness supplied.
  bool decomposition_failed = false;
  bool out_of_bounds = false;
};

// One-round coset protocol on a registered arity-1 oracle: the prover sends g
// and q (from `prover_f`, or `forged` if given), the verifier draws beta and
// makes three queries.
UniOutcome coset_check(OracleRegistry& reg, const OracleId& f, const MPoly& prover_f,
                       const Domain& H, const FieldElement& S, Coins& coins,
                       Transcript& transcript, OpCounter* ops = nullptr,
                       const CosetWitness* forged = nullptr);

}  // namespace folddcs
