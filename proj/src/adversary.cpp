#include "folddcs/adversary.hpp"

#include <algorithm>

namespace folddcs {

bool Strategy::tampers(std::size_t index, bool is_final) const {
  switch (kind) {
    case StrategyKind::kHonest: return false;
    case StrategyKind::kHonestShape:
    case StrategyKind::kGreedyClaimedSum: return true;
    case StrategyKind::kTamperFinalOracle: return is_final;
    case StrategyKind::kTamperRoundK: return index == k;
  }
  return false;
}

std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case StrategyKind::kHonest: return "honest";
    case StrategyKind::kHonestShape: return "honest-shape";
    case StrategyKind::kGreedyClaimedSum: return "greedy";
    case StrategyKind::kTamperFinalOracle: return "tamper-final";
    case StrategyKind::kTamperRoundK: return "tamper-round-" + std::to_string(s.k);
  }
  return "?";
}

std::optional<Strategy> parse_strategy(const std::string& s) {
  if (s == "honest") return Strategy{StrategyKind::kHonest};
  if (s == "honest-shape") return Strategy{StrategyKind::kHonestShape};
  if (s == "greedy") return Strategy{StrategyKind::kGreedyClaimedSum};
  if (s == "tamper-final") return Strategy{StrategyKind::kTamperFinalOracle};
  const std::string prefix = "tamper-round-";
  if (s.rfind(prefix, 0) == 0) {
    try {
      std::size_t pos = 0;
      const auto k = std::stoul(s.substr(prefix.size()), &pos);
      if (k >= 1 && pos == s.size() - prefix.size()) {
        return Strategy{StrategyKind::kTamperRoundK, k};
      }
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

namespace {

FieldElement cube_factor(const Domain& H, std::size_t arity) {
  const PrimeField& F = H.field();
  return F.elem(H.size() % F.modulus()).pow(arity);
}

}  // namespace

std::optional<MPoly> greedy_correction(const PrimeField& field, std::size_t arity,
                                       std::uint32_t d, std::uint32_t D, const Domain& H,
                                       const FieldElement& delta, SeededPrng& rng) {
  MPoly h(field, arity, d, D);
  if (delta.is_zero()) return h;
  const std::uint32_t r = std::min(d, h.total_bound());
  const FieldElement rest = cube_factor(H, arity - 1);
  if (rest.is_zero()) return std::nullopt;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<FieldElement> roots;
    while (roots.size() < r) {
      FieldElement x = field.sample(rng);
      if (std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
    }
    std::vector<FieldElement> c{field.one()};
    for (const auto& rho : roots) {
      std::vector<FieldElement> next(c.size() + 1, field.zero());
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= rho * c[k];
      }
      c = std::move(next);
    }
    FieldElement s = field.zero();
    for (const auto& a : H.points()) {
      FieldElement v = field.zero();
      for (std::size_t k = c.size(); k-- > 0;) v = v * a + c[k];
      s += v;
    }
    s *= rest;
    if (s.is_zero()) continue;
    const FieldElement kappa = delta * s.inv();
    for (std::size_t k = 0; k < c.size(); ++k) {
      ExponentVector e(arity, 0);
      e[0] = static_cast<std::uint32_t>(k);
      h.add_term(e, kappa * c[k]);
    }
    return h;
  }
  return std::nullopt;
}

MPoly Adversary::message(const MPoly& honest_msg, const FieldElement& target, const Domain& H,
                         std::size_t index, bool is_final) {
  if (!strategy_.tampers(index, is_final)) return honest_msg;
  const PrimeField& F = honest_msg.field();
  const std::size_t arity = honest_msg.arity();
  const std::uint32_t d = honest_msg.partial_bound(), D = honest_msg.total_bound();

  if (strategy_.kind == StrategyKind::kHonestShape) {
    MPoly r = random_poly(F, arity, d, D, 0.5, rng_);
    const FieldElement n = cube_factor(H, arity);
    if (!n.is_zero()) {
      const FieldElement shift = (target - sum_over_cube(r, H)) * n.inv();
      r.add_term(ExponentVector(arity, 0), shift);
      return r;
    }
    // |H| = p: every shape sums to the same value; fall through to greedy.
  }
  const FieldElement delta = target - sum_over_cube(honest_msg, H);
  auto h = greedy_correction(F, arity, d, D, H, delta, rng_);
  if (!h) return honest_msg;
  return honest_msg.plus(*h);
}

CosetWitness Adversary::coset_witness(const MPoly& f, const Domain& H, const FieldElement& S) {
  if (auto w = coset_decompose(f, H, S)) return *w;
  return coset_forge(f, H, S, rng_);
}

}  // namespace folddcs
