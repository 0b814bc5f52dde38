// Runs acceptance criteria 1..8 at the default grids and prints one line per
// criterion. Exit status is nonzero if any criterion fails.

#include <cstdlib>
#include <iostream>

#include "ghkit/acceptance.hpp"

int main(int argc, char** argv) {
  ghkit::AcceptanceOptions opts;
  bool all = true;
  for (int id = 1; id <= 8; ++id) {
    if (argc > 1 && std::atoi(argv[1]) != id) continue;
    const auto r = ghkit::run_criterion(id, opts);
    std::cout << ghkit::format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
