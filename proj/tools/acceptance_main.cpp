// Prints one pass/fail line per acceptance criterion.

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  using namespace folddcs::acceptance;
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  app.add_option("--criterion", ids, "criterion ids (default: all)")
      ->check(CLI::Range(1, kCriteria));
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) {
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  }
  bool ok = true;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id);
    std::cout << format_line(r) << std::endl;
    for (const auto& d : r.details) std::cout << "    " << d << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
