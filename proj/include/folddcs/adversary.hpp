#pragma once

#include <optional>
#include <string>

#include "folddcs/field.hpp"
#include "folddcs/mpoly.hpp"
#include "folddcs/univariate.hpp"

namespace folddcs {

enum class StrategyKind {
  kHonest,
  // Random polynomials of the right shape, shifted to carry the target sum.
  kHonestShape,
  // Honest message plus a polynomial with as many roots as the degree bounds
  // allow, carrying the sum discrepancy. Tampers with every message.
  kGreedyClaimedSum,
  // Greedy on the last prover message only.
  kTamperFinalOracle,
  // Greedy on message k (1-based) only.
  kTamperRoundK,
};

struct Strategy {
  StrategyKind kind = StrategyKind::kHonest;
  std::size_t k = 1;

  bool tampers(std::size_t index, bool is_final) const;
};

std::string to_string(const Strategy& s);
std::optional<Strategy> parse_strategy(const std::string& s);

// A cheating prover's message rule. Protocols compute the message an honest
// prover would send from the adversary's own state and ask the adversary what
// to send instead. `target` is the value the verifier will compare the
// message's sum over H^arity against.
class Adversary {
 public:
  Adversary(Strategy strategy, const Seed& seed) : strategy_(strategy), rng_(seed) {}

  const Strategy& strategy() const { return strategy_; }
  bool honest() const { return strategy_.kind == StrategyKind::kHonest; }

  // `index` is 1-based in the protocol's message order.
  MPoly message(const MPoly& honest_msg, const FieldElement& target, const Domain& H,
                std::size_t index, bool is_final);

  // Coset-protocol witness for the final message: the honest one when the
  // claim is true, a forged one otherwise.
  CosetWitness coset_witness(const MPoly& f, const Domain& H, const FieldElement& S);

 private:
  Strategy strategy_;
  SeededPrng rng_;
};

// h = kappa * prod_{j<=r} (x_1 - rho_j) with distinct random roots and
// r = min(d, D), scaled so that sum_{H^arity} h = delta. Returns nullopt when
// no such scaling exists (the root product sums to zero for every draw tried).
std::optional<MPoly> greedy_correction(const PrimeField& field, std::size_t arity,
                                       std::uint32_t d, std::uint32_t D, const Domain& H,
                                       const FieldElement& delta, SeededPrng& rng);

}  // namespace folddcs
