#include <cmath>

#include "folddcs/fold_dcs.hpp"

namespace folddcs {

namespace {

struct Node {
  OracleId oracle;
  MPoly poly;  // prover side
  FieldElement claim;
};

}  // namespace

DcsResult dcs_run(const MPoly& f, const Domain& H, const FieldElement& S, Coins& coins,
                  bool shared_randomness, Adversary* adversary) {
  const std::size_t mu = f.arity();
  if (mu != 1) fold_rounds_for(mu);
  const PrimeField& F = f.field();
  if (H.field() != F || !F.contains(S)) throw FieldMismatch();

  DcsResult out;
  Transcript& t = out.run.transcript;
  Metrics& met = t.metrics();
  OracleRegistry reg;
  Verdict verdict;
  const auto sigma = power_sums(H, f.partial_bound(), &met.prover_summation);

  // Levels are processed breadth-first: all nodes of a level send their f0 in
  // one round, then the verifier answers with alpha (one per node, or one for
  // the whole level).
  std::vector<Node> level{{reg.register_poly(f, "f"), f, S}};
  std::size_t message_index = 0;
  const std::size_t total_messages = mu - 1;
  std::size_t depth = 0;
  while (true) {
    out.nodes_per_level.push_back(level.size());
    const std::size_t arity = level.front().poly.arity();
    if (arity == 1) break;
    const std::size_t half = arity / 2;
    const std::string tag = std::to_string(depth) + "." ;

    std::vector<OracleId> f0_ids;
    std::vector<MPoly> f0_polys;
    for (std::size_t k = 0; k < level.size(); ++k) {
      MPoly msg = partial_sum_suffix(level[k].poly, sigma, half, &met.prover_summation);
      ++message_index;
      if (adversary) {
        msg = adversary->message(msg, level[k].claim, H, message_index,
                                 message_index == total_messages);
      }
      const bool ok = msg.field() == F && msg.arity() == half &&
                      msg.max_partial_degree() <= f.partial_bound() &&
                      msg.total_degree() <= f.total_bound();
      verdict.check(ok, RejectReason::kMessageOutOfBounds);
      const OracleId id = reg.register_poly(msg, "f0@" + tag + std::to_string(k));
      t.prover_oracle(id.label, id.index, half, k == 0);
      f0_ids.push_back(id);
      f0_polys.push_back(std::move(msg));
    }

    std::vector<std::vector<FieldElement>> alphas;
    if (shared_randomness) {
      alphas.assign(level.size(), coins.draw_many(F, half));
      t.challenge("alpha@" + std::to_string(depth), alphas.front());
    } else {
      for (std::size_t k = 0; k < level.size(); ++k) {
        alphas.push_back(coins.draw_many(F, half));
        t.challenge("alpha@" + tag + std::to_string(k), alphas.back());
      }
    }

    std::vector<Node> next;
    for (std::size_t k = 0; k < level.size(); ++k) {
      // S_1 = f0(alpha): the claimed sum of f1 = f(alpha, .).
      const FieldElement s1 = reg.query(f0_ids[k], alphas[k], &t);
      const OracleId f1 = reg.register_virtual(PrefixEval{level[k].oracle, alphas[k]},
                                               "f1@" + tag + std::to_string(k));
      MPoly f1_poly = partial_eval_prefix(level[k].poly, alphas[k], &met.prover_materialization);
      next.push_back({f0_ids[k], std::move(f0_polys[k]), level[k].claim});
      next.push_back({f1, std::move(f1_poly), s1});
    }
    level = std::move(next);
    ++depth;
  }

  // Leaves: the verifier sums each univariate oracle over H by querying.
  for (const Node& leaf : level) {
    verdict.check(naive_check(reg, leaf.oracle, H, leaf.claim, t, &met.verifier_other),
                  RejectReason::kSumMismatch);
  }
  out.run.accept = verdict.accept();
  out.run.reason = verdict.reason();
  return out;
}

// Along any root-to-leaf path a false claim survives a split only if the
// prover's f0 agrees with the honest one at alpha: a nonzero difference of
// total degree <= D vanishes there with probability <= D/q. There are m
// splits on the path and the leaf check is exact.
double dcs_soundness_bound(std::size_t m, std::uint32_t D, std::uint64_t q) {
  if (q < 2 || D >= q) throw std::invalid_argument("invalid soundness parameters");
  return 1.0 - std::pow(1.0 - static_cast<double>(D) / static_cast<double>(q),
                        static_cast<double>(m));
}

}  // namespace folddcs
