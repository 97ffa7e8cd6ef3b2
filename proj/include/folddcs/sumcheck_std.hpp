#pragma once

#include <span>

#include "folddcs/adversary.hpp"
#include "folddcs/mpoly.hpp"
#include "folddcs/protocol.hpp"
#include "folddcs/univariate.hpp"

namespace folddcs {

struct StdInstance {
  MPoly f;
  Domain H;
  FieldElement S;
};

// f_i(x) = sum_{a in H^{mu-i}} f(alpha_1..alpha_{i-1}, x, a) for 1 <= i <= mu.
MPoly std_prove_round(const MPoly& f, const Domain& H, std::span<const FieldElement> alphas,
                      std::size_t i, OpCounter* summation = nullptr,
                      OpCounter* materialization = nullptr);

// The classical protocol: mu rounds, each a univariate message and a fresh
// challenge, then one query f(alpha_1..alpha_mu). The verifier holds every
// message in the clear, so the round checks are local: kNaive evaluates on H,
// the other modes use power sums.
RunResult run_standard(const StdInstance& inst, Coins& coins, UniMode mode,
                       Adversary* adversary = nullptr);

// 1 - (1 - d/q)^{mu-1} (1 - max(p, d/q)).
double std_soundness_bound(std::size_t mu, std::uint32_t d, std::uint64_t q, double p);

}  // namespace folddcs
