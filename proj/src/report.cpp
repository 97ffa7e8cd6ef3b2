#include "folddcs/report.hpp"

#include <sodium.h>

#include <cmath>

namespace folddcs {

using nlohmann::json;

namespace {

json ops_json(const OpCounter& c) { return {{"adds", c.adds}, {"muls", c.muls}}; }

json elems(const std::vector<FieldElement>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.value());
  return a;
}

const char* kind_name(CellKind k) {
  switch (k) {
    case CellKind::kExact: return "exact";
    case CellKind::kUpperBound: return "upper_bound";
    case CellKind::kInformational: return "informational";
  }
  return "?";
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char out[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(out, reinterpret_cast<const unsigned char*>(data.data()), data.size());
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned char b : out) {
    s.push_back(hex[b >> 4]);
    s.push_back(hex[b & 15]);
  }
  return s;
}

json metrics_json(const Metrics& m) {
  return {{"rounds", m.rounds},
          {"verifier_random_elements", m.verifier_random_elements},
          {"oracle_queries", m.oracle_queries},
          {"batched_queries", m.batched_queries},
          {"concrete_touches", m.concrete_touches},
          {"commitments", m.commitments},
          {"input_commitments", m.input_commitments},
          {"prover_summation", ops_json(m.prover_summation)},
          {"prover_materialization", ops_json(m.prover_materialization)},
          {"verifier_query_phase", ops_json(m.verifier_query_phase)},
          {"verifier_other", ops_json(m.verifier_other)}};
}

json transcript_json(const Transcript& t) {
  json moves = json::array();
  for (const auto& mv : t.moves()) {
    json j;
    j["direction"] = mv.direction == Direction::kProverToVerifier ? "P->V" : "V->P";
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, OracleMessage>) {
            j["type"] = "oracle";
            j["label"] = p.label;
            j["oracle_index"] = p.oracle_index;
            j["arity"] = p.arity;
            if (!p.digest.empty()) j["digest"] = p.digest;
          } else if constexpr (std::is_same_v<T, PolyMessage>) {
            j["type"] = "poly";
            j["label"] = p.label;
            j["poly"] = p.poly_text;
          } else if constexpr (std::is_same_v<T, Challenge>) {
            j["type"] = "challenge";
            j["label"] = p.label;
            j["values"] = elems(p.values);
          } else {
            j["type"] = "query";
            j["label"] = p.label;
            j["point"] = elems(p.point);
            j["value"] = p.value.value();
          }
        },
        mv.payload);
    moves.push_back(std::move(j));
  }
  return {{"moves", std::move(moves)}, {"metrics", metrics_json(t.metrics())}};
}

json run_json(const RunResult& r, const MPoly& f, const Seed& seed, const std::string& protocol) {
  json j;
  j["schema"] = kJsonSchema;
  j["protocol"] = protocol;
  j["accept"] = r.accept;
  j["reason"] = to_string(r.reason);
  j["seed"] = seed_to_hex(seed);
  j["instance_digest"] = sha256_hex(f.to_text());
  j["field"] = f.field().modulus();
  j["mu"] = f.arity();
  j["d"] = f.partial_bound();
  j["D"] = f.total_bound();
  if (r.final_sum) j["final_sum"] = r.final_sum->value();
  j["transcript"] = transcript_json(r.transcript);
  return j;
}

json pcs_report_json(const PcsReport& r) {
  return {{"input_commitment", r.input_commitment},
          {"commitments", r.commitments},
          {"batch_ells", r.batch_ells},
          {"single_evals", r.single_evals},
          {"eval_rounds", r.eval_rounds},
          {"eval_coins", r.eval_coins},
          {"evaluations_ok", r.evaluations_ok}};
}

json soundness_json(const SoundnessReport& r) {
  return {{"schema", kJsonSchema},
          {"protocol", to_string(r.protocol)},
          {"strategy", to_string(r.strategy)},
          {"q", r.q},
          {"mu", r.mu},
          {"d", r.d},
          {"D", r.D},
          {"trials", r.trials},
          {"acceptances", r.acceptances},
          {"estimate", r.estimate},
          {"stderr", r.stderr_},
          {"bound", r.bound},
          {"within_bound", r.within_bound}};
}

json tables_json(const std::vector<TableCell>& cells) {
  json arr = json::array();
  for (const auto& c : cells) {
    json j{{"table", c.table}, {"column", c.column}, {"row", c.row},
           {"mu", c.mu},       {"formula", c.formula}, {"measured", c.measured},
           {"kind", kind_name(c.kind)}};
    j["formula_value"] = c.formula_value ? json(*c.formula_value) : json(nullptr);
    j["match"] = c.kind == CellKind::kInformational ? json(nullptr) : json(c.ok());
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(std::move(j));
  }
  return {{"schema", kJsonSchema}, {"cells", std::move(arr)}};
}

}  // namespace folddcs
