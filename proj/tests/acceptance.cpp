// One line per acceptance criterion; exit status 1 if any criterion fails.

#include "sasaki/verify.hpp"

#include <iostream>

int main() {
  bool ok = true;
  for (int id = 1; id <= 11; ++id) {
    const sasaki::CriterionResult r = sasaki::run_criterion(id);
    std::cout << r.line() << std::endl;
    if (!r.pass) {
      if (!r.note.empty()) std::cout << "      " << r.note << std::endl;
      ok = false;
    }
  }
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
  return ok ? 0 : 1;
}
