#include "folddcs/oracle.hpp"

namespace folddcs {

void Transcript::prover_oracle(const std::string& label, std::size_t oracle_index,
                               std::size_t arity, bool opens_round, std::string digest) {
  moves_.push_back({Direction::kProverToVerifier,
                    OracleMessage{label, oracle_index, arity, std::move(digest)}});
  if (opens_round) ++metrics_.rounds;
  ++metrics_.commitments;
}

void Transcript::prover_poly(const std::string& label, const MPoly& poly) {
  moves_.push_back({Direction::kProverToVerifier, PolyMessage{label, poly.to_text()}});
  ++metrics_.rounds;
}

void Transcript::set_digest(std::size_t oracle_index, const std::string& digest) {
  for (auto& mv : moves_) {
    if (auto* om = std::get_if<OracleMessage>(&mv.payload); om && om->oracle_index == oracle_index) {
      om->digest = digest;
    }
  }
}

void Transcript::challenge(const std::string& label, std::vector<FieldElement> values) {
  metrics_.verifier_random_elements += values.size();
  moves_.push_back({Direction::kVerifierToProver, Challenge{label, std::move(values)}});
}

void Transcript::record_query(const std::string& label, std::vector<FieldElement> point,
                              const FieldElement& value, std::uint64_t concrete_touches) {
  moves_.push_back({Direction::kProverToVerifier, EvalClaim{label, std::move(point), value}});
  ++metrics_.oracle_queries;
  metrics_.concrete_touches += concrete_touches;
  if (!in_batch_) {
    ++metrics_.batched_queries;
  } else if (!batch_touched_) {
    ++metrics_.batched_queries;
    batch_touched_ = true;
  }
}

void Transcript::begin_batch() {
  if (in_batch_) throw std::logic_error("nested query batch");
  in_batch_ = true;
  batch_touched_ = false;
}

void Transcript::end_batch() {
  if (!in_batch_) throw std::logic_error("end_batch without begin_batch");
  in_batch_ = false;
}

const OracleRegistry::Entry& OracleRegistry::entry(const OracleId& id) const {
  if (id.index >= entries_.size()) {
    throw UnknownOracle("unknown oracle #" + std::to_string(id.index));
  }
  return entries_[id.index];
}

OracleRegistry::Entry& OracleRegistry::entry(const OracleId& id) {
  if (id.index >= entries_.size()) {
    throw UnknownOracle("unknown oracle #" + std::to_string(id.index));
  }
  return entries_[id.index];
}

OracleId OracleRegistry::register_poly(MPoly poly, std::string label) {
  Entry e;
  e.label = label;
  e.arity = poly.arity();
  e.poly.emplace(std::move(poly));
  entries_.push_back(std::move(e));
  return {entries_.size() - 1, std::move(label)};
}

OracleId OracleRegistry::register_virtual(VirtualExpr expr, std::string label) {
  std::size_t arity = 0;
  if (auto* pe = std::get_if<PrefixEval>(&expr)) {
    const auto base_arity = entry(pe->base).arity;
    if (pe->alpha.empty() || pe->alpha.size() >= base_arity) {
      throw std::invalid_argument("prefix length must lie strictly between 0 and the arity");
    }
    arity = base_arity - pe->alpha.size();
  } else {
    const auto& fe = std::get<FoldExpr>(expr);
    const auto la = entry(fe.left).arity;
    if (entry(fe.right).arity != la) throw std::invalid_argument("fold operands differ in arity");
    arity = la;
  }
  Entry e;
  e.label = label;
  e.arity = arity;
  e.expr.emplace(std::move(expr));
  entries_.push_back(std::move(e));
  return {entries_.size() - 1, std::move(label)};
}

FieldElement OracleRegistry::resolve(std::size_t index, std::span<const FieldElement> point,
                                     std::uint64_t& touches) {
  Entry& e = entries_[index];
  if (e.poly) {
    ++e.touch_count;
    ++touches;
    return eval(*e.poly, point);
  }
  if (auto* pe = std::get_if<PrefixEval>(&*e.expr)) {
    std::vector<FieldElement> full(pe->alpha);
    full.insert(full.end(), point.begin(), point.end());
    return resolve(pe->base.index, full, touches);
  }
  const auto& fe = std::get<FoldExpr>(*e.expr);
  // Operands are copied out: resolving may not reallocate entries_, but keep
  // the expression stable regardless.
  const FieldElement z = fe.z;
  const std::size_t l = fe.left.index, r = fe.right.index;
  const FieldElement left = resolve(l, point, touches);
  const FieldElement right = resolve(r, point, touches);
  return counted_add(counted_mul(z, left, &resolution_ops_), right, &resolution_ops_);
}

FieldElement OracleRegistry::query(const OracleId& id, std::span<const FieldElement> point,
                                   Transcript* transcript) {
  Entry& e = entry(id);
  if (point.size() != e.arity) {
    throw std::invalid_argument("query point has " + std::to_string(point.size()) +
                                " coordinates, oracle '" + e.label + "' has arity " +
                                std::to_string(e.arity));
  }
  ++e.query_count;
  std::uint64_t touches = 0;
  FieldElement v = resolve(id.index, point, touches);
  if (transcript) {
    transcript->record_query(entries_[id.index].label,
                             std::vector<FieldElement>(point.begin(), point.end()), v, touches);
  }
  return v;
}

const MPoly& OracleRegistry::poly(const OracleId& id) const {
  const Entry& e = entry(id);
  if (!e.poly) throw std::invalid_argument("oracle '" + e.label + "' is virtual");
  return *e.poly;
}

MPoly OracleRegistry::expand(const OracleId& id) const {
  const Entry& e = entry(id);
  if (e.poly) return *e.poly;
  if (auto* pe = std::get_if<PrefixEval>(&*e.expr)) {
    return partial_eval_prefix(expand(pe->base), pe->alpha);
  }
  const auto& fe = std::get<FoldExpr>(*e.expr);
  return fold(fe.z, expand(fe.left), expand(fe.right));
}

OracleId OracleRegistry::id_at(std::size_t index) const {
  const Entry& e = entry(OracleId{index, {}});
  return {index, e.label};
}

}  // namespace folddcs
