#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folddcs/adversary.hpp"
#include "folddcs/mpoly.hpp"
#include "folddcs/oracle.hpp"
#include "folddcs/protocol.hpp"
#include "folddcs/univariate.hpp"

namespace folddcs {

struct FoldInstance {
  MPoly f;
  Domain H;
  FieldElement S;
  UniMode uni = UniMode::kCoefficientSide;
};

// log2(mu); throws std::invalid_argument when mu is not a power of two >= 2.
std::size_t fold_rounds_for(std::size_t mu);
// Throws std::invalid_argument on a malformed instance (arity, d >= |H|,
// field mismatch, coset mode over an unstructured H).
void validate_fold_instance(const FoldInstance& inst);

struct FoldRound {
  OracleId f0;
  std::vector<FieldElement> alpha;
  FieldElement z;
  // f^(i) = z f0^(i) + f^(i-1)(alpha, .), verifier side.
  OracleId f_virtual;
};

struct CommitPhaseState {
  OracleRegistry registry;
  Transcript transcript;
  OracleId f;
  std::vector<FoldRound> rounds;
  OracleId f_final;
  // Coset mode: the prover's witness oracles for f^(m).
  std::optional<OracleId> coset_g;
  std::optional<OracleId> coset_q;
  // A prover message left its declared bounds.
  bool out_of_bounds = false;
  // Prover side: the materialised f^(0..m), f^(0) = f.
  std::vector<MPoly> prover_f;
  // Prover side: S^(0..m) as the recurrence defines them.
  std::vector<FieldElement> prover_sums;
};

// Commit phase. Coins are drawn in the order alpha^(i), z^(i) for each round.
CommitPhaseState fold_commit_phase(const FoldInstance& inst, Coins& coins,
                                   Adversary* adversary = nullptr);

// Where query-phase evaluations come from. The oracle model asks the
// registry; the commitment model collects prover claims and proves them at
// the end. `offset` places the evaluated polynomial's variables inside the
// single point (alpha^(1), ..., alpha^(m), beta).
class QuerySource {
 public:
  virtual ~QuerySource() = default;
  virtual FieldElement query(const OracleId& id, std::span<const FieldElement> point,
                             std::size_t offset, Transcript& t) = 0;
  virtual void begin_group(Transcript& t) { t.begin_batch(); }
  virtual void end_group(Transcript& t) { t.end_batch(); }
  // Called once after all queries; false rejects with kEvaluationProofFail.
  virtual bool finish(Coins&, Transcript&) { return true; }
};

class RegistrySource final : public QuerySource {
 public:
  explicit RegistrySource(OracleRegistry& reg) : reg_(reg) {}
  FieldElement query(const OracleId& id, std::span<const FieldElement> point, std::size_t,
                     Transcript& t) override {
    return reg_.query(id, point, &t);
  }

 private:
  OracleRegistry& reg_;
};

// Query phase. Steps 1 and 2 form one batch group; beta is drawn between
// them. Verifier work in the two steps goes to metrics.verifier_query_phase.
RunResult fold_query_phase(CommitPhaseState& state, const FoldInstance& inst, Coins& coins,
                           QuerySource* source = nullptr);

RunResult run_fold_dcs(const FoldInstance& inst, Coins& coins, Adversary* adversary = nullptr);

// 1 - (1 - ((D+1)/q - D/q^2))^m (1 - max(p, D/q)).
double fold_soundness_bound(std::size_t m, std::uint32_t D, std::uint64_t q, double p);
// (m+1)(D+1)/q, valid when p <= (D+1)/q <= 1.
double fold_soundness_cap(std::size_t m, std::uint32_t D, std::uint64_t q);

// Table 2 of the complexity analysis, evaluated. The column is picked by the
// univariate mode: kCoefficientSide is the column without a univariate
// sumcheck, kNaive the unstructured column, kCosetIOP the coset column.
struct FoldExpected {
  std::uint64_t rounds = 0;
  std::uint64_t randomness = 0;
  std::uint64_t communication = 0;
  std::uint64_t commitments = 0;
  std::uint64_t queries = 0;
  // Exact verifier count; absent for the coset column, which is asymptotic.
  std::optional<std::uint64_t> verifier_ops;
  std::string communication_formula;
};
FoldExpected fold_metrics_expected(std::size_t mu, std::uint32_t d, std::size_t h,
                                   UniMode mode);

// Unfolded reference protocol: every internal node of the tree sends
// f0 = sum over the second half of its variables, the verifier draws alpha,
// and both halves recurse. Leaves check their sum over H by querying.
struct DcsResult {
  RunResult run;
  // Node count per tree level, root first.
  std::vector<std::size_t> nodes_per_level;
};
DcsResult dcs_run(const MPoly& f, const Domain& H, const FieldElement& S, Coins& coins,
                  bool shared_randomness, Adversary* adversary = nullptr);
// 1 - (1 - D/q)^m.
double dcs_soundness_bound(std::size_t m, std::uint32_t D, std::uint64_t q);

}  // namespace folddcs
