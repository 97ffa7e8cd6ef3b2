#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folddcs/field.hpp"
#include "folddcs/univariate.hpp"

namespace folddcs {

enum class CellKind {
  kExact,          // measured must equal the formula
  kUpperBound,     // measured must not exceed the formula
  kInformational,  // asymptotic or undefined count; shown, never gated
};

struct TableCell {
  std::string table;   // "table1" or "table2"
  std::string column;  // e.g. "std", "fold", "no-us", "unstructured", "coset"
  std::string row;
  std::size_t mu = 0;
  std::string formula;
  std::optional<double> formula_value;
  double measured = 0;
  CellKind kind = CellKind::kInformational;
  std::string note;

  // True for informational cells.
  bool ok() const;
};

struct TableConfig {
  std::vector<std::size_t> mus{2, 4, 8, 16};
  std::uint32_t d = 2;
  std::size_t h = 4;
  // Terms in the random test polynomial; 0 picks max(1, mu/4), which keeps
  // every round inside the term count the prover bound assumes.
  std::size_t terms = 0;
  Seed seed = seed_from_u64(1);
};

// Prime 3 * 2^30 + 1: large enough to be uninteresting for soundness and
// rich in power-of-two subgroups for the coset column.
inline constexpr std::uint64_t kTableModulus = 3221225473ull;

// Measured honest runs next to the evaluated formulas of both comparison
// tables.
std::vector<TableCell> build_tables(const TableConfig& cfg);

std::string tables_markdown(const std::vector<TableCell>& cells);

// Sum over the rounds of mu_i d^{mu_i}, mu_i = mu / 2^i, plus 2 d |H|.
double prover_summation_bound(std::size_t mu, std::uint32_t d, std::size_t h);

}  // namespace folddcs
