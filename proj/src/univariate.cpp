#include "folddcs/univariate.hpp"

#include <algorithm>

namespace folddcs {

std::string to_string(UniMode mode) {
  switch (mode) {
    case UniMode::kNaive: return "naive";
    case UniMode::kCoefficientSide: return "coefficient";
    case UniMode::kCosetIOP: return "coset";
  }
  return "?";
}

std::optional<UniMode> parse_uni_mode(const std::string& s) {
  if (s == "naive") return UniMode::kNaive;
  if (s == "coefficient" || s == "coeff") return UniMode::kCoefficientSide;
  if (s == "coset") return UniMode::kCosetIOP;
  return std::nullopt;
}

double uni_soundness(UniMode mode, std::uint32_t d, std::size_t n, std::uint64_t q) {
  if (q < 2 || n < 2) throw std::invalid_argument("invalid univariate soundness parameters");
  if (mode != UniMode::kCosetIOP) return 0.0;
  const double deg = std::max<double>(d, static_cast<double>(n - 1));
  return std::min(1.0, deg / static_cast<double>(q));
}

bool naive_check(OracleRegistry& reg, const OracleId& f, const Domain& H, const FieldElement& S,
                 Transcript& transcript, OpCounter* ops) {
  if (reg.arity(f) != 1) throw std::invalid_argument("naive check needs an arity-1 oracle");
  std::optional<FieldElement> acc;
  for (const auto& a : H.points()) {
    const FieldElement pt[1] = {a};
    FieldElement v = reg.query(f, pt, &transcript);
    acc = acc ? counted_add(*acc, v, ops) : v;
  }
  return *acc == S;
}

bool coefficient_side_check(const MPoly& f, std::span<const FieldElement> sigma,
                            const FieldElement& S, OpCounter* ops) {
  return sum_over_cube(f, sigma, ops) == S;
}

namespace {

void require_multiplicative(const Domain& H) {
  if (!H.is_multiplicative()) {
    throw std::invalid_argument("coset univariate sumcheck needs a multiplicative subgroup or coset");
  }
}

// Division of f by x^n - c: returns (quotient, remainder coefficients).
std::pair<std::vector<FieldElement>, std::vector<FieldElement>> divide_vanishing(
    const MPoly& f, std::size_t n, const FieldElement& c) {
  std::vector<FieldElement> a = univariate_coefficients(f);
  const PrimeField& F = f.field();
  std::vector<FieldElement> quot(a.size() > n ? a.size() - n : 0, F.zero());
  for (std::size_t j = a.size(); j-- > n;) {
    if (a[j].is_zero()) continue;
    quot[j - n] += a[j];
    a[j - n] += c * a[j];
    a[j] = F.zero();
  }
  a.resize(n, F.zero());
  return {std::move(quot), std::move(a)};
}

CosetWitness witness_from(const MPoly& f, const Domain& H,
                          std::vector<FieldElement> quot, const std::vector<FieldElement>& rem) {
  const std::size_t n = H.size();
  const std::uint32_t d = f.partial_bound();
  std::vector<FieldElement> gc(rem.begin() + 1, rem.end());
  MPoly g = univariate_from_coefficients(f.field(), gc, coset_g_bound(n));
  // The quotient is empty when deg f < n; it can only exceed the declared
  // bound when f itself does, which MPoly rules out.
  MPoly q = univariate_from_coefficients(f.field(), quot,
                                         std::max<std::uint32_t>(coset_q_bound(d, n),
                                                                 quot.empty() ? 0 : quot.size() - 1));
  return {std::move(g), std::move(q)};
}

}  // namespace

std::uint32_t coset_g_bound(std::size_t n) { return static_cast<std::uint32_t>(n - 2); }

std::uint32_t coset_q_bound(std::uint32_t d, std::size_t n) {
  return d >= n ? static_cast<std::uint32_t>(d - n) : 0;
}

std::optional<CosetWitness> coset_decompose(const MPoly& f, const Domain& H,
                                            const FieldElement& S) {
  require_multiplicative(H);
  const std::size_t n = H.size();
  auto [quot, rem] = divide_vanishing(f, n, H.vanishing_constant());
  const FieldElement n_inv = f.field().elem(n % f.field().modulus()).inv();
  if (rem[0] != S * n_inv) return std::nullopt;
  return witness_from(f, H, std::move(quot), rem);
}

CosetWitness coset_decompose_true(const MPoly& f, const Domain& H) {
  require_multiplicative(H);
  auto [quot, rem] = divide_vanishing(f, H.size(), H.vanishing_constant());
  return witness_from(f, H, std::move(quot), rem);
}

CosetWitness coset_forge(const MPoly& f, const Domain& H, const FieldElement& S,
                         SeededPrng& rng) {
  CosetWitness w = coset_decompose_true(f, H);
  const PrimeField& F = f.field();
  const std::size_t n = H.size();
  const FieldElement n_inv = F.elem(n % F.modulus()).inv();
  const FieldElement c = (sum_over_cube(f, H) - S) * n_inv;
  if (c.is_zero()) return w;
  // e(x) = c * prod_j (1 - x/rho_j) over n - 1 distinct nonzero roots.
  std::vector<FieldElement> e{c};
  std::vector<FieldElement> roots;
  while (roots.size() + 1 < n) {
    FieldElement rho = F.sample(rng);
    if (rho.is_zero() || std::find(roots.begin(), roots.end(), rho) != roots.end()) continue;
    roots.push_back(rho);
    const FieldElement k = -rho.inv();
    std::vector<FieldElement> next(e.size() + 1, F.zero());
    for (std::size_t i = 0; i < e.size(); ++i) {
      next[i] += e[i];
      next[i + 1] += k * e[i];
    }
    e = std::move(next);
  }
  // f - x*g' - S/n - Z*q = e  with  g' = g - (e - c)/x.
  std::vector<FieldElement> g = univariate_coefficients(w.g);
  g.resize(n - 1, F.zero());
  for (std::size_t i = 1; i < e.size(); ++i) g[i - 1] -= e[i];
  w.g = univariate_from_coefficients(F, g, coset_g_bound(n));
  return w;
}

bool coset_witness_in_bounds(const CosetWitness& w, std::uint32_t d, std::size_t n) {
  if (w.g.arity() != 1 || w.q.arity() != 1) return false;
  if (!w.g.is_zero() && univariate_degree(w.g) > coset_g_bound(n)) return false;
  if (!w.q.is_zero()) {
    if (d < n) return false;
    if (univariate_degree(w.q) > coset_q_bound(d, n)) return false;
  }
  return true;
}

FieldElement counted_pow(const FieldElement& base, std::uint64_t e, OpCounter* ops) {
  if (e == 0) return base.pow(0);
  FieldElement r = base;
  int top = 63;
  while (!((e >> top) & 1)) --top;
  for (int b = top - 1; b >= 0; --b) {
    r = counted_mul(r, r, ops);
    if ((e >> b) & 1) r = counted_mul(r, base, ops);
  }
  return r;
}

bool coset_identity_holds(const FieldElement& beta, const FieldElement& f_beta,
                          const FieldElement& g_beta, const FieldElement& q_beta,
                          const Domain& H, const FieldElement& S, OpCounter* ops) {
  require_multiplicative(H);
  const PrimeField& F = H.field();
  const std::size_t n = H.size();
  // n^{-1} and shift^n are public parameters of H, not per-run work.
  const FieldElement n_inv = F.elem(n % F.modulus()).inv();
  const FieldElement z = counted_add(counted_pow(beta, n, ops), -H.vanishing_constant(), ops);
  FieldElement rhs = counted_mul(beta, g_beta, ops);
  rhs = counted_add(rhs, counted_mul(S, n_inv, ops), ops);
  rhs = counted_add(rhs, counted_mul(z, q_beta, ops), ops);
  return rhs == f_beta;
}

UniOutcome coset_check(OracleRegistry& reg, const OracleId& f, const MPoly& prover_f,
                       const Domain& H, const FieldElement& S, Coins& coins,
                       Transcript& transcript, OpCounter* ops, const CosetWitness* forged) {
  require_multiplicative(H);
  if (reg.arity(f) != 1) throw std::invalid_argument("coset check needs an arity-1 oracle");
  UniOutcome out;
  std::optional<CosetWitness> w;
  if (forged) {
    w = *forged;
  } else {
    w = coset_decompose(prover_f, H, S);
  }
  if (!w) {
    out.decomposition_failed = true;
    return out;
  }
  const std::uint32_t d = prover_f.partial_bound();
  if (!coset_witness_in_bounds(*w, d, H.size())) {
    out.out_of_bounds = true;
    return out;
  }
  const OracleId gid = reg.register_poly(w->g, "g");
  const OracleId qid = reg.register_poly(w->q, "q");
  transcript.prover_oracle("g", gid.index, 1, true);
  transcript.prover_oracle("q", qid.index, 1, false);
  const FieldElement beta = coins.draw(H.field());
  transcript.challenge("beta_us", {beta});
  const FieldElement pt[1] = {beta};
  const FieldElement fb = reg.query(f, pt, &transcript);
  const FieldElement gb = reg.query(gid, pt, &transcript);
  const FieldElement qb = reg.query(qid, pt, &transcript);
  out.accept = coset_identity_holds(beta, fb, gb, qb, H, S, ops);
  return out;
}

}  // namespace folddcs
