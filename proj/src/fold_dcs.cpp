#include "folddcs/fold_dcs.hpp"

#include <bit>
#include <cmath>

namespace folddcs {

std::size_t fold_rounds_for(std::size_t mu) {
  if (mu < 2 || !std::has_single_bit(mu)) {
    throw std::invalid_argument("μ must be a power of two (pad f with dummy variables up to the next power of two)");
  }
  return static_cast<std::size_t>(std::countr_zero(mu));
}

void validate_fold_instance(const FoldInstance& inst) {
  fold_rounds_for(inst.f.arity());
  if (inst.H.field() != inst.f.field() || !inst.f.field().contains(inst.S)) {
    throw FieldMismatch();
  }
  if (inst.f.partial_bound() + 1 > inst.H.size()) {
    throw std::invalid_argument("partial degree d must be at most |H| - 1");
  }
  if (inst.uni == UniMode::kCosetIOP && !inst.H.is_multiplicative()) {
    throw std::invalid_argument("coset mode needs H to be a multiplicative subgroup or coset");
  }
}

namespace {

bool within_declared(const MPoly& msg, const MPoly& f, std::size_t arity) {
  return msg.field() == f.field() && msg.arity() == arity &&
         msg.max_partial_degree() <= f.partial_bound() && msg.total_degree() <= f.total_bound();
}

std::string sup(const char* base, std::size_t i) { return std::string(base) + "^" + std::to_string(i); }

}  // namespace

CommitPhaseState fold_commit_phase(const FoldInstance& inst, Coins& coins, Adversary* adversary) {
  validate_fold_instance(inst);
  const MPoly& f = inst.f;
  const Domain& H = inst.H;
  const PrimeField& F = f.field();
  const std::size_t mu = f.arity();
  const std::size_t m = fold_rounds_for(mu);

  CommitPhaseState st;
  Metrics& met = st.transcript.metrics();
  st.f = st.registry.register_poly(f, "f");
  st.prover_f.push_back(f);
  st.prover_sums.push_back(inst.S);

  const auto sigma = power_sums(H, f.partial_bound(), &met.prover_summation);
  OracleId prev = st.f;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t mu_i = mu >> i;
    const MPoly& cur = st.prover_f.back();
    MPoly msg = partial_sum_suffix(cur, sigma, mu_i, &met.prover_summation);
    if (adversary) msg = adversary->message(msg, st.prover_sums.back(), H, i, false);
    if (!within_declared(msg, f, mu_i)) st.out_of_bounds = true;

    FoldRound r;
    r.f0 = st.registry.register_poly(msg, sup("f0", i));
    st.transcript.prover_oracle(r.f0.label, r.f0.index, mu_i);

    r.alpha = coins.draw_many(F, mu_i);
    r.z = coins.draw(F);
    st.transcript.challenge(sup("alpha", i), r.alpha);
    st.transcript.challenge(sup("z", i), {r.z});

    const OracleId f1 = st.registry.register_virtual(PrefixEval{prev, r.alpha}, sup("f1", i));
    r.f_virtual = st.registry.register_virtual(FoldExpr{r.z, r.f0, f1}, sup("f", i));
    prev = r.f_virtual;

    MPoly f1_poly = partial_eval_prefix(cur, r.alpha, &met.prover_materialization);
    const FieldElement s_next = r.z * st.prover_sums.back() + eval(msg, r.alpha);
    MPoly next = fold(r.z, msg, f1_poly, &met.prover_materialization);
    st.prover_f.push_back(std::move(next));
    st.prover_sums.push_back(s_next);
    st.rounds.push_back(std::move(r));
  }

  MPoly final_msg = st.prover_f.back();
  if (adversary) final_msg = adversary->message(final_msg, st.prover_sums.back(), H, m + 1, true);
  if (!within_declared(final_msg, f, 1)) st.out_of_bounds = true;
  st.f_final = st.registry.register_poly(final_msg, sup("f", m));
  st.transcript.prover_oracle(st.f_final.label, st.f_final.index, 1);

  if (inst.uni == UniMode::kCosetIOP) {
    const FieldElement& s_m = st.prover_sums.back();
    CosetWitness w = adversary ? adversary->coset_witness(final_msg, H, s_m)
                               : coset_decompose_true(final_msg, H);
    if (!coset_witness_in_bounds(w, f.partial_bound(), H.size())) st.out_of_bounds = true;
    st.coset_g = st.registry.register_poly(std::move(w.g), "g");
    st.coset_q = st.registry.register_poly(std::move(w.q), "q");
    st.transcript.prover_oracle("g", st.coset_g->index, 1, true);
    st.transcript.prover_oracle("q", st.coset_q->index, 1, false);
  }
  return st;
}

RunResult fold_query_phase(CommitPhaseState& st, const FoldInstance& inst, Coins& coins,
                           QuerySource* source) {
  const PrimeField& F = inst.f.field();
  const std::size_t mu = inst.f.arity();
  const std::size_t m = st.rounds.size();
  RegistrySource default_source(st.registry);
  QuerySource& src = source ? *source : default_source;
  Transcript& t = st.transcript;
  Metrics& met = t.metrics();
  OpCounter* qp = &met.verifier_query_phase;

  Verdict verdict;
  verdict.check(!st.out_of_bounds, RejectReason::kMessageOutOfBounds);

  src.begin_group(t);
  // Step 1: y_j = f0^(j)(alpha^(j)).
  std::vector<FieldElement> y(m + 1, F.zero());
  std::size_t offset = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    const FoldRound& r = st.rounds[j - 1];
    y[j] = src.query(r.f0, r.alpha, offset, t);
    offset += r.alpha.size();
  }
  // P[j] = prod_{l > j} z^(l); P[0] is the product of all z.
  std::vector<FieldElement> P(m + 1, F.one());
  FieldElement acc = F.one();
  for (std::size_t j = m; j >= 1; --j) {
    P[j] = acc;
    acc = counted_mul(acc, st.rounds[j - 1].z, qp);
  }
  P[0] = acc;
  FieldElement s_m = counted_mul(inst.S, P[0], qp);
  for (std::size_t j = 1; j <= m; ++j) s_m = counted_add(s_m, counted_mul(P[j], y[j], qp), qp);

  // Step 2.
  const FieldElement beta = coins.draw(F);
  t.challenge("beta", {beta});
  std::vector<FieldElement> point;
  point.reserve(mu);
  for (const auto& r : st.rounds) point.insert(point.end(), r.alpha.begin(), r.alpha.end());
  point.push_back(beta);

  const FieldElement bpt[1] = {beta};
  const FieldElement fm_beta = src.query(st.f_final, bpt, mu - 1, t);
  FieldElement rhs = src.query(st.f, point, 0, t);
  for (std::size_t j = 1; j <= m; ++j) {
    const FoldRound& r = st.rounds[j - 1];
    const std::size_t len = r.alpha.size();
    std::span<const FieldElement> tail(point.data() + (mu - len), len);
    const FieldElement w = src.query(r.f0, tail, mu - len, t);
    rhs = counted_add(rhs, counted_mul(r.z, w, qp), qp);
  }
  src.end_group(t);
  verdict.check(fm_beta == rhs, RejectReason::kConsistencyFail);

  // Step 3: univariate sumcheck of f^(m) against S^(m).
  OpCounter* other = &met.verifier_other;
  switch (inst.uni) {
    case UniMode::kCoefficientSide: {
      const auto sigma = power_sums(inst.H, inst.f.partial_bound(), other);
      const MPoly& fm = st.registry.poly(st.f_final);
      const bool ok = fm.max_partial_degree() < sigma.size() &&
                      coefficient_side_check(fm, sigma, s_m, other);
      verdict.check(ok, RejectReason::kSumMismatch);
      break;
    }
    case UniMode::kNaive: {
      std::optional<FieldElement> sum;
      for (const auto& a : inst.H.points()) {
        const FieldElement pt[1] = {a};
        const FieldElement v = src.query(st.f_final, pt, mu - 1, t);
        sum = sum ? counted_add(*sum, v, other) : v;
      }
      verdict.check(*sum == s_m, RejectReason::kSumMismatch);
      break;
    }
    case UniMode::kCosetIOP: {
      const FieldElement gb = src.query(*st.coset_g, bpt, mu - 1, t);
      const FieldElement qb = src.query(*st.coset_q, bpt, mu - 1, t);
      verdict.check(coset_identity_holds(beta, fm_beta, gb, qb, inst.H, s_m, other),
                    RejectReason::kUnivariateFail);
      break;
    }
  }
  verdict.check(src.finish(coins, t), RejectReason::kEvaluationProofFail);

  RunResult res;
  res.accept = verdict.accept();
  res.reason = verdict.reason();
  res.final_sum = s_m;
  res.transcript = std::move(st.transcript);
  return res;
}

RunResult run_fold_dcs(const FoldInstance& inst, Coins& coins, Adversary* adversary) {
  CommitPhaseState st = fold_commit_phase(inst, coins, adversary);
  return fold_query_phase(st, inst, coins);
}

double fold_soundness_bound(std::size_t m, std::uint32_t D, std::uint64_t q, double p) {
  if (q < 2 || p < 0 || p > 1 || D >= q) throw std::invalid_argument("invalid soundness parameters");
  const double qd = static_cast<double>(q);
  const double per_round = (D + 1.0) / qd - D / (qd * qd);
  const double last = std::max(p, D / qd);
  return 1.0 - std::pow(1.0 - per_round, static_cast<double>(m)) * (1.0 - last);
}

double fold_soundness_cap(std::size_t m, std::uint32_t D, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("invalid soundness parameters");
  return (m + 1.0) * (D + 1.0) / static_cast<double>(q);
}

FoldExpected fold_metrics_expected(std::size_t mu, std::uint32_t d, std::size_t h,
                                   UniMode mode) {
  const std::uint64_t lg = fold_rounds_for(mu);
  FoldExpected e;
  e.rounds = lg + 1;
  e.randomness = mu + lg + 1;
  e.commitments = lg + 1;
  e.queries = 2 * (lg + 1);
  e.communication = mu + lg;
  e.communication_formula = "mu + log mu";
  e.verifier_ops = 5 * lg + 1;
  switch (mode) {
    case UniMode::kCoefficientSide: break;
    case UniMode::kNaive:
      e.communication += h;
      e.communication_formula = "mu + log mu + |H|";
      e.queries += h;
      e.verifier_ops = 5 * lg + h;
      break;
    case UniMode::kCosetIOP: {
      e.rounds += 1;
      e.randomness += 1;
      e.commitments += 2;
      e.queries = 2 * (lg + 2);
      const auto log_d = d <= 1 ? 0u : static_cast<unsigned>(std::bit_width(d - 1));
      e.communication = mu + log_d;
      e.communication_formula = "mu + log d";
      e.verifier_ops.reset();
      break;
    }
  }
  return e;
}

}  // namespace folddcs
