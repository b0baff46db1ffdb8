// Runs every acceptance criterion and prints one verdict line per criterion,
// followed by its measured-versus-expected checks. Exit status is nonzero if
// any criterion fails.

#include <cstdlib>
#include <iostream>

#include "jchm/acceptance.hpp"
#include "jchm/parallel.hpp"

int main() {
  jchm::AcceptanceOptions options;
  options.jobs = jchm::default_jobs();
  bool all = true;
  for (int id = 1; id <= jchm::kCriterionCount; ++id) {
    const auto result = jchm::run_criterion(id, options);
    std::cout << jchm::format_result(result) << std::flush;
    all = all && result.passed();
  }
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILED") << '\n';
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
