#pragma once

#include <cstddef>
#include <string>

namespace qbb {

// Outcome of an exhaustive identity check; keeps the first counterexample only.
struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t checks = 0;
  std::string counterexample;

  template <class Describe>
  bool check(bool ok, Describe&& describe) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      counterexample = describe();
    }
    return ok;
  }
  void absorb(const SuiteResult& o) {
    checks += o.checks;
    if (!o.pass && pass) {
      pass = false;
      counterexample = o.name + ": " + o.counterexample;
    }
  }
};

}  // namespace qbb
