#include "folddcs/sumcheck_std.hpp"

#include <algorithm>
#include <cmath>

namespace folddcs {

namespace {

MPoly prove_round(const MPoly& f, std::span<const FieldElement> sigma,
                  std::span<const FieldElement> alphas, std::size_t i, OpCounter* summation,
                  OpCounter* materialization) {
  const std::size_t mu = f.arity();
  if (i < 1 || i > mu || alphas.size() != i - 1) {
    throw std::invalid_argument("round index and challenge count disagree");
  }
  MPoly g = partial_eval_prefix(f, alphas, materialization);
  if (i == mu) return g;
  return partial_sum_suffix(g, sigma, mu - i, summation);
}

}  // namespace

MPoly std_prove_round(const MPoly& f, const Domain& H, std::span<const FieldElement> alphas,
                      std::size_t i, OpCounter* summation, OpCounter* materialization) {
  const auto sigma = power_sums(H, f.partial_bound(), summation);
  return prove_round(f, sigma, alphas, i, summation, materialization);
}

RunResult run_standard(const StdInstance& inst, Coins& coins, UniMode mode,
                       Adversary* adversary) {
  const MPoly& f = inst.f;
  const Domain& H = inst.H;
  const PrimeField& F = f.field();
  const std::size_t mu = f.arity();
  const std::uint32_t d = f.partial_bound();
  if (H.field() != F || !F.contains(inst.S)) throw FieldMismatch();

  RunResult res;
  Transcript& t = res.transcript;
  Metrics& m = t.metrics();
  OracleRegistry reg;
  const OracleId fid = reg.register_poly(f, "f");

  const auto prover_sigma = power_sums(H, d, &m.prover_summation);
  const auto verifier_sigma =
      mode == UniMode::kNaive ? std::vector<FieldElement>{} : power_sums(H, d, &m.verifier_other);

  Verdict verdict;
  std::vector<FieldElement> alphas;
  FieldElement claim = inst.S;
  for (std::size_t i = 1; i <= mu; ++i) {
    MPoly msg = prove_round(f, prover_sigma, alphas, i, &m.prover_summation,
                            &m.prover_materialization);
    if (adversary) msg = adversary->message(msg, claim, H, i, i == mu);
    t.prover_poly("f_" + std::to_string(i), msg);

    const bool in_bounds =
        msg.arity() == 1 && msg.field() == F && (msg.is_zero() || univariate_degree(msg) <= d);
    verdict.check(in_bounds, RejectReason::kMessageOutOfBounds);
    if (in_bounds) {
      FieldElement s = F.zero();
      if (mode == UniMode::kNaive) {
        bool first = true;
        for (const auto& a : H.points()) {
          const FieldElement pt[1] = {a};
          FieldElement v = eval(msg, pt, &m.verifier_other);
          s = first ? v : counted_add(s, v, &m.verifier_other);
          first = false;
        }
      } else {
        s = sum_over_cube(msg, verifier_sigma, &m.verifier_other);
      }
      verdict.check(s == claim, RejectReason::kSumMismatch);
    }

    const FieldElement a = coins.draw(F);
    t.challenge("alpha_" + std::to_string(i), {a});
    alphas.push_back(a);
    if (in_bounds) {
      const FieldElement pt[1] = {a};
      claim = eval(msg, pt, &m.verifier_other);
    }
  }
  const FieldElement fa = reg.query(fid, alphas, &t);
  verdict.check(fa == claim, RejectReason::kConsistencyFail);
  res.accept = verdict.accept();
  res.reason = verdict.reason();
  return res;
}

double std_soundness_bound(std::size_t mu, std::uint32_t d, std::uint64_t q, double p) {
  if (mu < 1 || q < 2 || p < 0 || p > 1 || d >= q) {
    throw std::invalid_argument("invalid soundness parameters");
  }
  const double e = static_cast<double>(d) / static_cast<double>(q);
  if (mu == 1) return std::max(p, e);
  return 1.0 - std::pow(1.0 - e, static_cast<double>(mu - 1)) * (1.0 - std::max(p, e));
}

}  // namespace folddcs
