#pragma once

#include <array>
#include <string>
#include <vector>

#include "folddcs/fold_dcs.hpp"
#include "folddcs/mpoly.hpp"

namespace folddcs {

// delta = ceil(log2(d + 1)): bits per exponent.
std::size_t exponent_bits(std::uint32_t d);

struct PcsParams {
  unsigned lambda = 128;
  std::size_t mu = 0;
  std::uint32_t d = 0;
  std::uint32_t D = 0;
  std::size_t delta = 0;
  std::size_t n = 0;  // mu * delta
};

PcsParams mock_setup(unsigned lambda, std::size_t mu, std::uint32_t d, std::uint32_t D);

// Variable y_{i,j} (bit j of the exponent of x_i) has index i*delta + j.
MPoly multilin(const MPoly& f);
// Throws std::invalid_argument when g is not multilinear in mu*delta variables
// or decodes to exponents above d.
MPoly multilin_inverse(const MPoly& g, std::size_t mu, std::uint32_t d, std::uint32_t D);

// Coefficient of t^k is g(bits of k), bit i of k feeding variable i.
// Guarded to n <= 20.
MPoly u_map(const MPoly& g);
// Multilinear interpolation of the coefficient table; throws when
// deg h >= 2^n.
MPoly u_inverse(const MPoly& h, std::size_t n);

// All exponent vectors with entries <= d summing to <= D, lexicographic.
std::vector<ExponentVector> enumerate_basis_support(std::size_t mu, std::uint32_t d,
                                                    std::uint32_t D);

class OutsideCommitSupport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Commitment {
  std::array<std::uint8_t, 32> digest{};
  std::size_t mu = 0;
  std::uint32_t d = 0;
  std::uint32_t D = 0;

  std::string hex() const;
  bool operator==(const Commitment&) const = default;
};

// Hash of the univariate image of f. U_n(MultiLin(x^a)) is a fixed element of
// F_{d,D}, identified by its lowest exponent k_a = sum_i a_i 2^(i*delta); the
// image is therefore serialised as sorted (k_a, coefficient) pairs. Throws
// OutsideCommitSupport when a term leaves the (mu, d, D) support.
Commitment mock_commit(const PcsParams& pp, const MPoly& f);
bool mock_open(const PcsParams& pp, const Commitment& c, const MPoly& f);

// One claimed evaluation inside a batch: the committed polynomial's variables
// occupy point[offset .. offset + arity).
struct BatchItem {
  Commitment commitment;
  std::size_t offset = 0;
  std::size_t arity = 0;
  FieldElement value;
};

struct BatchEvalClaim {
  std::vector<FieldElement> point;
  std::vector<BatchItem> items;
  std::size_t ell() const { return items.size(); }
};

struct BatchEvalOutcome {
  bool accept = false;
  std::size_t rounds = 3;
  std::size_t ell = 0;
  FieldElement gamma;
  bool openings_ok = false;
  bool combination_ok = false;
  bool values_ok = false;
};

// Three rounds: claims then gamma; h = sum_i gamma^i embed(f_i) then a random
// point r; openings. The verifier accepts iff every opening matches its
// commitment, h(r) agrees with the openings, and
// sum_i gamma^i (f_i(x) - y_i) = 0, i.e. h(x) = sum_i gamma^i y_i.
// `polys` are the prover's openings, one per item.
BatchEvalOutcome mock_batch_eval(const PcsParams& pp, const BatchEvalClaim& claim,
                                 const std::vector<MPoly>& polys, Coins& coins);
BatchEvalOutcome mock_eval(const PcsParams& pp, const Commitment& c, const MPoly& f,
                           std::span<const FieldElement> point, const FieldElement& value,
                           Coins& coins);

struct PcsReport {
  std::vector<std::string> commitments;  // hex, in sending order
  std::string input_commitment;
  std::vector<std::size_t> batch_ells;
  std::size_t single_evals = 0;
  std::size_t eval_rounds = 0;
  std::size_t eval_coins = 0;
  bool evaluations_ok = true;
};

struct PcsRunResult {
  RunResult run;
  PcsReport report;
};

// Fold-DCS with every prover polynomial committed. Steps 1 and 2 of the query
// phase resolve through one batch evaluation at (alpha^(1), ..., alpha^(m),
// beta); univariate-check evaluations use single evaluations. Extra coins
// (gamma and r per evaluation) are drawn after beta.
PcsRunResult fold_dcs_with_pcs(const FoldInstance& inst, const PcsParams& pp, Coins& coins,
                               Adversary* adversary = nullptr);

}  // namespace folddcs
