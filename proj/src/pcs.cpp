#include "folddcs/pcs.hpp"

#include <sodium.h>

#include <algorithm>
#include <bit>
#include <map>

namespace folddcs {

std::size_t exponent_bits(std::uint32_t d) {
  // d = 0 would give zero bits per variable; one bit keeps the map defined.
  return std::max<std::size_t>(1, std::bit_width(d));
}

PcsParams mock_setup(unsigned lambda, std::size_t mu, std::uint32_t d, std::uint32_t D) {
  if (mu == 0) throw std::invalid_argument("arity must be positive");
  PcsParams pp;
  pp.lambda = lambda;
  pp.mu = mu;
  pp.d = d;
  pp.D = static_cast<std::uint32_t>(std::min<std::uint64_t>(D, std::uint64_t{mu} * d));
  pp.delta = exponent_bits(d);
  pp.n = mu * pp.delta;
  return pp;
}

MPoly multilin(const MPoly& f) {
  const std::size_t delta = exponent_bits(f.partial_bound());
  const std::size_t n = f.arity() * delta;
  MPoly g(f.field(), n, 1, static_cast<std::uint32_t>(n));
  for (const auto& [e, c] : f.terms()) {
    ExponentVector y(n, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = 0; j < delta; ++j) y[i * delta + j] = (e[i] >> j) & 1u;
    }
    g.add_term(y, c);
  }
  return g;
}

MPoly multilin_inverse(const MPoly& g, std::size_t mu, std::uint32_t d, std::uint32_t D) {
  const std::size_t delta = exponent_bits(d);
  if (g.arity() != mu * delta) throw std::invalid_argument("arity is not mu * delta");
  MPoly f(g.field(), mu, d, D);
  for (const auto& [y, c] : g.terms()) {
    ExponentVector e(mu, 0);
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (y[k] > 1) throw std::invalid_argument("polynomial is not multilinear");
      e[k / delta] |= y[k] << (k % delta);
    }
    if (!f.within_bounds(e)) throw std::invalid_argument("support outside the MultiLin image");
    f.add_term(e, c);
  }
  return f;
}

namespace {

constexpr std::size_t kMaxCubeBits = 20;

}  // namespace

MPoly u_map(const MPoly& g) {
  const std::size_t n = g.arity();
  if (n > kMaxCubeBits) throw std::invalid_argument("u_map limited to 20 variables");
  const std::size_t size = std::size_t{1} << n;
  const PrimeField& F = g.field();
  std::vector<FieldElement> table(size, F.zero());
  for (const auto& [e, c] : g.terms()) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 1) throw std::invalid_argument("polynomial is not multilinear");
      if (e[i]) mask |= std::size_t{1} << i;
    }
    table[mask] += c;
  }
  // Subset sums: value at b is the sum of coefficients of monomials inside b.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < size; ++b) {
      if (b & (std::size_t{1} << i)) table[b] += table[b ^ (std::size_t{1} << i)];
    }
  }
  const auto top = static_cast<std::uint32_t>(size - 1);
  return univariate_from_coefficients(F, table, top);
}

MPoly u_inverse(const MPoly& h, std::size_t n) {
  if (n == 0 || n > kMaxCubeBits) throw std::invalid_argument("u_inverse needs 1..20 variables");
  const std::size_t size = std::size_t{1} << n;
  if (!h.is_zero() && univariate_degree(h) >= size) {
    throw std::invalid_argument("degree is at least 2^n");
  }
  std::vector<FieldElement> table = univariate_coefficients(h);
  table.resize(size, h.field().zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < size; ++b) {
      if (b & (std::size_t{1} << i)) table[b] -= table[b ^ (std::size_t{1} << i)];
    }
  }
  MPoly g(h.field(), n, 1, static_cast<std::uint32_t>(n));
  for (std::size_t mask = 0; mask < size; ++mask) {
    if (table[mask].is_zero()) continue;
    ExponentVector e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = (mask >> i) & 1u;
    g.add_term(e, table[mask]);
  }
  return g;
}

namespace {

void support_rec(ExponentVector& e, std::size_t i, std::uint32_t d, std::uint32_t budget,
                 std::vector<ExponentVector>& out) {
  if (i == e.size()) {
    out.push_back(e);
    return;
  }
  for (std::uint32_t v = 0; v <= std::min(d, budget); ++v) {
    e[i] = v;
    support_rec(e, i + 1, d, budget - v, out);
  }
  e[i] = 0;
}

void le_bits_to_hex(const std::vector<std::uint8_t>& bytes, std::string& out) {
  static const char* kHex = "0123456789abcdef";
  for (auto b : bytes) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
}

// k_a = sum_i a_i 2^(i*delta) as little-endian bytes of n bits.
std::vector<std::uint8_t> basis_index(const ExponentVector& a, std::size_t delta) {
  const std::size_t n = a.size() * delta;
  std::vector<std::uint8_t> bytes((n + 7) / 8, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < delta; ++j) {
      if ((a[i] >> j) & 1u) {
        const std::size_t bit = i * delta + j;
        bytes[bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
      }
    }
  }
  return bytes;
}

MPoly embed(const MPoly& f, std::size_t total_arity, std::size_t offset) {
  if (offset + f.arity() > total_arity) throw std::invalid_argument("embedding out of range");
  MPoly out(f.field(), total_arity, f.partial_bound(), f.total_bound());
  for (const auto& [e, c] : f.terms()) {
    ExponentVector x(total_arity, 0);
    std::copy(e.begin(), e.end(), x.begin() + offset);
    out.add_term(x, c);
  }
  return out;
}

}  // namespace

std::vector<ExponentVector> enumerate_basis_support(std::size_t mu, std::uint32_t d,
                                                    std::uint32_t D) {
  std::vector<ExponentVector> out;
  ExponentVector e(mu, 0);
  support_rec(e, 0, d, D, out);
  return out;
}

std::string Commitment::hex() const {
  std::string out;
  le_bits_to_hex(std::vector<std::uint8_t>(digest.begin(), digest.end()), out);
  return out;
}

Commitment mock_commit(const PcsParams& pp, const MPoly& f) {
  if (f.arity() > pp.mu) throw OutsideCommitSupport("arity exceeds the setup");
  const std::size_t delta = pp.delta;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [e, c] : f.terms()) {
    std::uint64_t total = 0;
    for (auto x : e) {
      if (x > pp.d) throw OutsideCommitSupport("partial degree above d");
      total += x;
    }
    if (total > pp.D) throw OutsideCommitSupport("total degree above D");
    std::string k;
    le_bits_to_hex(basis_index(e, delta), k);
    pairs.emplace_back(std::move(k), c.to_string());
  }
  std::sort(pairs.begin(), pairs.end());
  std::string buf = "mu=" + std::to_string(f.arity()) + " d=" + std::to_string(pp.d) +
                    " D=" + std::to_string(pp.D) + " p=" + std::to_string(f.field().modulus()) +
                    " delta=" + std::to_string(delta) + "\n";
  for (const auto& [k, c] : pairs) buf += k + ":" + c + "\n";
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  Commitment out;
  crypto_hash_sha256(out.digest.data(), reinterpret_cast<const unsigned char*>(buf.data()),
                     buf.size());
  out.mu = f.arity();
  out.d = pp.d;
  out.D = pp.D;
  return out;
}

bool mock_open(const PcsParams& pp, const Commitment& c, const MPoly& f) {
  try {
    return mock_commit(pp, f) == c;
  } catch (const OutsideCommitSupport&) {
    return false;
  }
}

BatchEvalOutcome mock_batch_eval(const PcsParams& pp, const BatchEvalClaim& claim,
                                 const std::vector<MPoly>& polys, Coins& coins) {
  if (polys.size() != claim.items.size()) throw std::invalid_argument("one opening per claim");
  BatchEvalOutcome out;
  out.ell = claim.ell();
  if (claim.items.empty()) {
    out.accept = out.openings_ok = out.combination_ok = out.values_ok = true;
    return out;
  }
  const PrimeField& F = polys.front().field();
  const std::size_t mu = claim.point.size();

  // Round 1: claims; verifier answers with gamma.
  out.gamma = coins.draw(F);
  // Round 2: the prover sends h = sum gamma^i embed(f_i); verifier answers r.
  MPoly h(F, mu, 0, 0);
  {
    std::uint32_t d = 0, D = 0;
    for (const auto& p : polys) {
      d = std::max(d, p.partial_bound());
      D = std::max(D, p.total_bound());
    }
    h = MPoly(F, mu, d, D);
    FieldElement g = F.one();
    for (std::size_t i = 0; i < polys.size(); ++i) {
      h = h.plus(embed(polys[i], mu, claim.items[i].offset).scaled(g));
      g *= out.gamma;
    }
  }
  const std::vector<FieldElement> r = coins.draw_many(F, mu);
  // Round 3: openings.
  out.openings_ok = true;
  FieldElement h_r = F.zero();
  FieldElement y_comb = F.zero();
  FieldElement g = F.one();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const BatchItem& it = claim.items[i];
    if (polys[i].arity() != it.arity || !mock_open(pp, it.commitment, polys[i])) {
      out.openings_ok = false;
      continue;
    }
    std::span<const FieldElement> rs(r.data() + it.offset, it.arity);
    h_r += g * eval(polys[i], rs);
    y_comb += g * it.value;
    g *= out.gamma;
  }
  out.combination_ok = out.openings_ok && eval(h, r) == h_r;
  out.values_ok = eval(h, claim.point) == y_comb;
  out.accept = out.openings_ok && out.combination_ok && out.values_ok;
  return out;
}

BatchEvalOutcome mock_eval(const PcsParams& pp, const Commitment& c, const MPoly& f,
                           std::span<const FieldElement> point, const FieldElement& value,
                           Coins& coins) {
  BatchEvalClaim claim;
  claim.point.assign(point.begin(), point.end());
  claim.items.push_back({c, 0, f.arity(), value});
  return mock_batch_eval(pp, claim, {f}, coins);
}

namespace {

class PcsSource final : public QuerySource {
 public:
  PcsSource(const OracleRegistry& reg, const PcsParams& pp,
            const std::map<std::size_t, Commitment>& commitments, std::size_t mu,
            PcsReport& report)
      : reg_(reg), pp_(pp), commitments_(commitments), mu_(mu), report_(report) {}

  FieldElement query(const OracleId& id, std::span<const FieldElement> point, std::size_t offset,
                     Transcript& t) override {
    const MPoly& poly = reg_.poly(id);
    const FieldElement v = eval(poly, point);
    t.record_query(id.label, std::vector<FieldElement>(point.begin(), point.end()), v, 1);
    Pending p{id.index, offset, std::vector<FieldElement>(point.begin(), point.end()), v};
    (in_group_ ? group_ : singles_).push_back(std::move(p));
    return v;
  }
  void begin_group(Transcript& t) override {
    t.begin_batch();
    in_group_ = true;
  }
  void end_group(Transcript& t) override {
    t.end_batch();
    in_group_ = false;
  }

  bool finish(Coins& coins, Transcript&) override {
    bool ok = true;
    if (!group_.empty()) {
      BatchEvalClaim claim;
      claim.point.assign(mu_, reg_.poly(reg_.id_at(0)).field().zero());
      std::vector<MPoly> polys;
      for (const auto& p : group_) {
        std::copy(p.point.begin(), p.point.end(), claim.point.begin() + p.offset);
      }
      for (const auto& p : group_) {
        claim.items.push_back({commitment(p.index), p.offset, p.point.size(), p.value});
        polys.push_back(reg_.poly(reg_.id_at(p.index)));
      }
      const auto out = mock_batch_eval(pp_, claim, polys, coins);
      report_.batch_ells.push_back(claim.ell());
      report_.eval_rounds += out.rounds;
      report_.eval_coins += 1 + mu_;
      ok = ok && out.accept;
    }
    for (const auto& p : singles_) {
      const MPoly& poly = reg_.poly(reg_.id_at(p.index));
      const auto out = mock_eval(pp_, commitment(p.index), poly, p.point, p.value, coins);
      ++report_.single_evals;
      report_.eval_rounds += out.rounds;
      report_.eval_coins += 1 + p.point.size();
      ok = ok && out.accept;
    }
    report_.evaluations_ok = ok;
    return ok;
  }

 private:
  struct Pending {
    std::size_t index;
    std::size_t offset;
    std::vector<FieldElement> point;
    FieldElement value;
  };

  Commitment commitment(std::size_t index) const {
    auto it = commitments_.find(index);
    return it == commitments_.end() ? Commitment{} : it->second;
  }

  const OracleRegistry& reg_;
  const PcsParams& pp_;
  const std::map<std::size_t, Commitment>& commitments_;
  std::size_t mu_;
  PcsReport& report_;
  bool in_group_ = false;
  std::vector<Pending> group_;
  std::vector<Pending> singles_;
};

}  // namespace

PcsRunResult fold_dcs_with_pcs(const FoldInstance& inst, const PcsParams& pp, Coins& coins,
                               Adversary* adversary) {
  if (pp.mu != inst.f.arity() || pp.d < inst.f.partial_bound()) {
    throw std::invalid_argument("PCS setup does not cover the instance profile");
  }
  PcsRunResult out;
  CommitPhaseState st = fold_commit_phase(inst, coins, adversary);

  std::map<std::size_t, Commitment> commitments;
  auto commit = [&](const OracleId& id) -> std::string {
    try {
      Commitment c = mock_commit(pp, st.registry.poly(id));
      commitments.emplace(id.index, c);
      return c.hex();
    } catch (const OutsideCommitSupport&) {
      st.out_of_bounds = true;
      return {};
    }
  };
  out.report.input_commitment = commit(st.f);
  st.transcript.metrics().input_commitments = 1;
  std::vector<std::size_t> sent;
  for (const auto& mv : st.transcript.moves()) {
    if (auto* om = std::get_if<OracleMessage>(&mv.payload)) sent.push_back(om->oracle_index);
  }
  for (std::size_t index : sent) {
    const std::string hex = commit(st.registry.id_at(index));
    st.transcript.set_digest(index, hex);
    out.report.commitments.push_back(hex);
  }

  PcsSource src(st.registry, pp, commitments, inst.f.arity(), out.report);
  out.run = fold_query_phase(st, inst, coins, &src);
  return out;
}

}  // namespace folddcs
