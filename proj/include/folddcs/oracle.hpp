#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "folddcs/field.hpp"
#include "folddcs/mpoly.hpp"

namespace folddcs {

enum class Direction { kProverToVerifier, kVerifierToProver };

// A polynomial the prover makes available as an oracle (or, in the PCS model,
// as a commitment). `digest` is empty in the oracle model.
struct OracleMessage {
  std::string label;
  std::size_t oracle_index = 0;
  std::size_t arity = 0;
  std::string digest;
};

// A polynomial sent in the clear (the univariate messages of the standard
// sumcheck).
struct PolyMessage {
  std::string label;
  std::string poly_text;
};

struct Challenge {
  std::string label;
  std::vector<FieldElement> values;
};

struct EvalClaim {
  std::string label;
  std::vector<FieldElement> point;
  FieldElement value;
};

using Payload = std::variant<OracleMessage, PolyMessage, Challenge, EvalClaim>;

struct Move {
  Direction direction;
  Payload payload;
};

struct Metrics {
  std::uint64_t rounds = 0;
  std::uint64_t verifier_random_elements = 0;
  // Logical queries, one per oracle named in a protocol step.
  std::uint64_t oracle_queries = 0;
  // Same queries with every batch group counted once.
  std::uint64_t batched_queries = 0;
  // Concrete oracle evaluations induced by resolving virtual oracles.
  std::uint64_t concrete_touches = 0;
  std::uint64_t commitments = 0;
  // Commitments to the input polynomial itself (PCS model only).
  std::uint64_t input_commitments = 0;

  // Prover work split between the power-sum summations the complexity
  // analysis counts and the symbolic bookkeeping (prefix evaluation, folding)
  // an honest prover also performs.
  OpCounter prover_summation;
  OpCounter prover_materialization;
  // Verifier work in the query-phase sum reconstruction and consistency check.
  OpCounter verifier_query_phase;
  // Everything else the verifier computes (univariate checks, round checks).
  OpCounter verifier_other;

  std::uint64_t prover_field_ops() const {
    return prover_summation.total() + prover_materialization.total();
  }
  std::uint64_t verifier_field_ops() const {
    return verifier_query_phase.total() + verifier_other.total();
  }
};

// Ordered record of one protocol execution.
class Transcript {
 public:
  // A prover move. `opens_round` marks the first prover message of a round;
  // additional oracles sent in the same round pass false.
  void prover_oracle(const std::string& label, std::size_t oracle_index, std::size_t arity,
                     bool opens_round = true, std::string digest = {});
  void prover_poly(const std::string& label, const MPoly& poly);
  // Attaches a commitment digest to the oracle message for `oracle_index`.
  void set_digest(std::size_t oracle_index, const std::string& digest);
  void challenge(const std::string& label, std::vector<FieldElement> values);
  void record_query(const std::string& label, std::vector<FieldElement> point,
                    const FieldElement& value, std::uint64_t concrete_touches);

  // Queries issued between begin_batch and end_batch count as a single
  // batched query.
  void begin_batch();
  void end_batch();

  const std::vector<Move>& moves() const { return moves_; }
  const Metrics& metrics() const { return metrics_; }
  Metrics& metrics() { return metrics_; }

 private:
  std::vector<Move> moves_;
  Metrics metrics_;
  bool in_batch_ = false;
  bool batch_touched_ = false;
};

struct OracleId {
  std::size_t index = 0;
  std::string label;

  bool operator==(const OracleId& o) const { return index == o.index; }
};

// f(alpha, .) over an earlier oracle.
struct PrefixEval {
  OracleId base;
  std::vector<FieldElement> alpha;
};

// z * left + right over earlier oracles of equal arity.
struct FoldExpr {
  FieldElement z;
  OracleId left;
  OracleId right;
};

using VirtualExpr = std::variant<PrefixEval, FoldExpr>;

class UnknownOracle : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Oracles available to the verifier. Concrete oracles answer from a stored
// polynomial; virtual ones resolve recursively through their expression.
class OracleRegistry {
 public:
  OracleId register_poly(MPoly poly, std::string label);
  // Throws UnknownOracle for dangling references and std::invalid_argument on
  // arity mismatch.
  OracleId register_virtual(VirtualExpr expr, std::string label);

  // One logical query. When `transcript` is given the query is recorded there.
  FieldElement query(const OracleId& id, std::span<const FieldElement> point,
                     Transcript* transcript = nullptr);

  std::size_t size() const { return entries_.size(); }
  std::size_t arity(const OracleId& id) const { return entry(id).arity; }
  bool is_virtual(const OracleId& id) const { return entry(id).expr.has_value(); }
  const std::string& label(const OracleId& id) const { return entry(id).label; }
  std::uint64_t query_count(const OracleId& id) const { return entry(id).query_count; }
  std::uint64_t touch_count(const OracleId& id) const { return entry(id).touch_count; }
  // Concrete oracles only.
  const MPoly& poly(const OracleId& id) const;
  // Symbolic expansion of any oracle into an explicit polynomial.
  MPoly expand(const OracleId& id) const;
  OracleId id_at(std::size_t index) const;

  // Field operations spent combining virtual-oracle answers.
  const OpCounter& resolution_ops() const { return resolution_ops_; }

 private:
  struct Entry {
    std::string label;
    std::size_t arity = 0;
    std::optional<MPoly> poly;
    std::optional<VirtualExpr> expr;
    std::uint64_t query_count = 0;
    std::uint64_t touch_count = 0;
  };

  const Entry& entry(const OracleId& id) const;
  Entry& entry(const OracleId& id);
  FieldElement resolve(std::size_t index, std::span<const FieldElement> point,
                       std::uint64_t& touches);

  std::vector<Entry> entries_;
  OpCounter resolution_ops_;
};

}  // namespace folddcs
