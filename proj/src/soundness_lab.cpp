#include "folddcs/soundness_lab.hpp"

#include <cmath>
#include <numeric>
#include <thread>

#include "folddcs/pcs.hpp"
#include "folddcs/sumcheck_std.hpp"

namespace folddcs {

Ratio make_ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

F3Example exhaustive_f3_example() {
  const PrimeField F(3);
  const Domain H = Domain::from_points(F, {F.elem(0), F.elem(1)});
  MPoly f(F, 2, 1, 1);
  f.add_term({1, 0}, F.one());
  f.add_term({0, 1}, F.one());
  const FieldElement S = F.zero();

  F3Example out;
  int best = 0;
  for (std::uint64_t r = 0; r < 3; ++r) {
    for (std::uint64_t t = 0; t < 3; ++t) {
      MPoly f0(F, 1, 1, 1);
      f0.add_term({1}, F.elem(r));
      f0.add_term({0}, F.elem(t));
      for (std::uint64_t a = 0; a < 3; ++a) {
        const FieldElement alpha[1] = {F.elem(a)};
        // Left child: f0 must carry the claimed sum.
        const bool left = sum_over_cube_bruteforce(f0, H) == S;
        // Right child: f(alpha, .) must sum to the value f0 announces at alpha.
        const MPoly f1 = partial_eval_prefix(f, alpha);
        const bool right = sum_over_cube_bruteforce(f1, H) == eval(f0, alpha);
        if (left && right) ++out.accepted[r][t];
      }
      best = std::max(best, out.accepted[r][t]);
    }
  }
  out.best = make_ratio(best, 3);
  return out;
}

std::string to_string(LabProtocol p) {
  switch (p) {
    case LabProtocol::kStd: return "std";
    case LabProtocol::kDcs: return "dcs";
    case LabProtocol::kFoldDcs: return "fold";
    case LabProtocol::kFoldDcsPcs: return "fold-pcs";
  }
  return "?";
}

std::optional<LabProtocol> parse_lab_protocol(const std::string& s) {
  if (s == "std") return LabProtocol::kStd;
  if (s == "dcs") return LabProtocol::kDcs;
  if (s == "fold") return LabProtocol::kFoldDcs;
  if (s == "fold-pcs") return LabProtocol::kFoldDcsPcs;
  return std::nullopt;
}

double lab_bound(LabProtocol protocol, const LabInstance& inst) {
  const std::uint64_t q = inst.f.field().modulus();
  const std::size_t mu = inst.f.arity();
  const std::uint32_t d = inst.f.partial_bound(), D = inst.f.total_bound();
  switch (protocol) {
    case LabProtocol::kStd: return std_soundness_bound(mu, d, q, 0.0);
    case LabProtocol::kDcs: return dcs_soundness_bound(fold_rounds_for(mu), D, q);
    case LabProtocol::kFoldDcs:
    case LabProtocol::kFoldDcsPcs:
      return fold_soundness_bound(fold_rounds_for(mu), D, q,
                                  uni_soundness(inst.uni, d, inst.H.size(), q));
  }
  return 1.0;
}

bool lab_trial(LabProtocol protocol, const LabInstance& inst, Coins& coins,
               Adversary& adversary) {
  switch (protocol) {
    case LabProtocol::kStd: {
      const UniMode mode = inst.uni == UniMode::kNaive ? UniMode::kNaive : UniMode::kCoefficientSide;
      return run_standard(StdInstance{inst.f, inst.H, inst.S}, coins, mode, &adversary).accept;
    }
    case LabProtocol::kDcs:
      return dcs_run(inst.f, inst.H, inst.S, coins, false, &adversary).run.accept;
    case LabProtocol::kFoldDcs:
      return run_fold_dcs(FoldInstance{inst.f, inst.H, inst.S, inst.uni}, coins, &adversary)
          .accept;
    case LabProtocol::kFoldDcsPcs: {
      const PcsParams pp =
          mock_setup(128, inst.f.arity(), inst.f.partial_bound(), inst.f.total_bound());
      return fold_dcs_with_pcs(FoldInstance{inst.f, inst.H, inst.S, inst.uni}, pp, coins,
                               &adversary)
          .run.accept;
    }
  }
  return false;
}

SoundnessReport monte_carlo(LabProtocol protocol, const Strategy& strategy,
                            const LabInstance& inst, std::uint64_t trials, const Seed& master,
                            unsigned threads) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (sum_over_cube_bruteforce(inst.f, inst.H) == inst.S) {
    throw TrueClaim("claimed sum is the true sum; soundness needs a false claim");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::vector<std::uint64_t> accepted(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < trials; i += threads) {
          const Seed s = derive_seed(master, i);
          SeededPrng rng(s);
          PrngCoins coins(rng);
          Adversary adv(strategy, derive_seed(s, 0));
          if (lab_trial(protocol, inst, coins, adv)) ++accepted[w];
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SoundnessReport rep;
  rep.protocol = protocol;
  rep.strategy = strategy;
  rep.q = inst.f.field().modulus();
  rep.mu = inst.f.arity();
  rep.d = inst.f.partial_bound();
  rep.D = inst.f.total_bound();
  rep.trials = trials;
  rep.acceptances = std::accumulate(accepted.begin(), accepted.end(), std::uint64_t{0});
  rep.estimate = static_cast<double>(rep.acceptances) / static_cast<double>(trials);
  rep.stderr_ = std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(trials));
  rep.bound = lab_bound(protocol, inst);
  rep.within_bound = rep.estimate <= rep.bound + 3.0 * rep.stderr_;
  return rep;
}

Char2Report characteristic2_degeneracy_check() {
  Char2Report rep;
  const PrimeField F(3);
  const Domain H = Domain::from_points(F, {F.elem(0), F.elem(1), F.elem(2)});
  const auto sigma = power_sums(H, 1);

  bool sym = true;
  for (std::size_t i = 0; i < 4; ++i) {
    MPoly x(F, 4, 1, 1);
    ExponentVector e(4, 0);
    e[i] = 1;
    x.add_term(e, F.one());
    sym = sym && sum_over_cube(x, sigma) == sigma[0].pow(3) * sigma[1];
  }
  const MPoly c = MPoly::constant(F, 4, 1, 1, F.elem(2));
  sym = sym && sum_over_cube(c, sigma) == F.elem(2) * sigma[0].pow(4);
  rep.symbolic_identity = sym;

  // All 3^5 linear polynomials in 4 variables.
  bool four = true;
  for (std::uint64_t code = 0; code < 243; ++code) {
    MPoly f(F, 4, 1, 1);
    std::uint64_t k = code;
    for (std::size_t i = 0; i <= 4; ++i, k /= 3) {
      ExponentVector e(4, 0);
      if (i < 4) e[i] = 1;
      if (k % 3) f.add_term(e, F.elem(k % 3));
    }
    four = four && sum_over_cube_bruteforce(f, H).is_zero();
  }
  rep.four_var_sums_vanish = four;

  bool two = true;
  for (std::uint64_t code = 0; code < 27; ++code) {
    MPoly g(F, 2, 1, 1);
    if (code % 3) g.add_term({0, 0}, F.elem(code % 3));
    if ((code / 3) % 3) g.add_term({1, 0}, F.elem((code / 3) % 3));
    if (code / 9) g.add_term({0, 1}, F.elem(code / 9));
    two = two && sum_over_cube_bruteforce(g, H).is_zero();
  }
  rep.two_var_messages_vanish = two;

  SeededPrng rng(seed_from_u64(2));
  rep.greedy_blocked = !greedy_correction(F, 2, 1, 1, H, F.one(), rng).has_value();
  rep.zero_poly_sums_to_zero = sum_over_cube(MPoly(F, 4, 1, 1), sigma).is_zero();
  return rep;
}

}  // namespace folddcs
