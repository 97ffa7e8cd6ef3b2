#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folddcs/adversary.hpp"
#include "folddcs/fold_dcs.hpp"
#include "folddcs/mpoly.hpp"
#include "folddcs/univariate.hpp"

namespace folddcs {

// Exact rational in lowest terms.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Ratio&) const = default;
};

Ratio make_ratio(std::uint64_t num, std::uint64_t den);

// f(x, y) = x + y over F_3 with H = {0, 1} and the false claim S = 0. The
// prover's only message is f0(x) = r x + t; for every (r, t) and every alpha
// the verifier's two child checks are run exactly.
struct F3Example {
  // accepted[r][t] = number of alpha in F_3 that accept.
  std::array<std::array<int, 3>, 3> accepted{};
  Ratio best;
};
F3Example exhaustive_f3_example();

enum class LabProtocol { kStd, kDcs, kFoldDcs, kFoldDcsPcs };
std::string to_string(LabProtocol p);
std::optional<LabProtocol> parse_lab_protocol(const std::string& s);

struct LabInstance {
  MPoly f;
  Domain H;
  FieldElement S;
  UniMode uni = UniMode::kCoefficientSide;
};

class TrueClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SoundnessReport {
  LabProtocol protocol;
  Strategy strategy;
  std::uint64_t q = 0;
  std::size_t mu = 0;
  std::uint32_t d = 0;
  std::uint32_t D = 0;
  std::uint64_t trials = 0;
  std::uint64_t acceptances = 0;
  double estimate = 0;
  double stderr_ = 0;
  double bound = 0;
  bool within_bound = false;
};

// The closed-form soundness bound the lab compares against.
double lab_bound(LabProtocol protocol, const LabInstance& inst);

// Independent trials; trial i draws verifier coins from derive_seed(master, i)
// and adversary coins from derive_seed(derive_seed(master, i), 0). Throws
// TrueClaim when the claimed sum is correct (checked by brute force).
SoundnessReport monte_carlo(LabProtocol protocol, const Strategy& strategy,
                            const LabInstance& inst, std::uint64_t trials, const Seed& master,
                            unsigned threads = 0);

// A single protocol execution against an adversary.
bool lab_trial(LabProtocol protocol, const LabInstance& inst, Coins& coins,
               Adversary& adversary);

// Odd-characteristic stand-in for the characteristic-2 obstruction: with
// H = F_p the factor |H| vanishes, so every linear polynomial sums to zero
// over H^k and the greedy strategy cannot steer the first-round sum.
struct Char2Report {
  // sum over H^4 of x_i equals sigma_0^3 sigma_1 for each variable, and of a
  // constant c equals c sigma_0^4.
  bool symbolic_identity = false;
  // Every linear f in 4 variables sums to 0 over F_3^4 (brute force).
  bool four_var_sums_vanish = false;
  // Every linear 2-variable message sums to 0 over F_3^2 (all 27 of them).
  bool two_var_messages_vanish = false;
  // The greedy adversary finds no correction for a nonzero target.
  bool greedy_blocked = false;
  bool zero_poly_sums_to_zero = false;
};
Char2Report characteristic2_degeneracy_check();

}  // namespace folddcs
