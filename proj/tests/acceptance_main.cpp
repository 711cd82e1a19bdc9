#include <cstdlib>
#include <iostream>
#include <string>

#include "perfo/acceptance.hpp"

// Prints one PASS/FAIL line per acceptance criterion. Optional arguments:
// --seed <int>, --only <id>, --verbose (every check with its measured value).
int main(int argc, char** argv) {
  perfo::AcceptanceOptions options;
  int only = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string flag = argv[i];
    if (flag == "--verbose") {
      verbose = true;
    } else if (flag == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (flag == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--seed N] [--only ID] [--verbose]\n";
      return 2;
    }
  }
  bool ok = true;
  for (int id = 1; id <= perfo::acceptance_criterion_count(); ++id) {
    if (only && id != only) continue;
    const perfo::CriterionResult r = perfo::run_criterion(id, options);
    std::cout << perfo::format_criterion(r) << std::endl;
    if (verbose)
      for (const perfo::CheckResult& c : r.checks)
        std::cout << "      " << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.measured
                  << (c.lower_bound ? " >= " : " <= ") << c.tolerance << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}
