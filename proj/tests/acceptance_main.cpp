// Acceptance executable: one line per criterion, nonzero exit on any failure.
// Also checks that the battery notices a perturbed q* (mutation check).

#include <cstdio>

#include "relay/acceptance.hpp"

int main() {
  const auto results = relay::run_acceptance();
  std::size_t failed = 0;
  for (const auto& r : results) {
    failed += !r.pass;
    std::printf("%s  %s  [%s] (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(), r.seconds);
  }

  relay::AcceptanceOptions mutated;
  mutated.q_star = [](double g) { return relay::q_star(g) + 1e-3; };
  bool caught = false;
  for (const auto& r : relay::run_acceptance(mutated)) {
    caught = caught || !r.pass;
  }
  std::printf("%s  mutation check: q* + 1e-3 is rejected\n", caught ? "PASS" : "FAIL");
  failed += !caught;

  std::printf("%zu/%zu criteria passed\n", results.size() + 1 - failed, results.size() + 1);
  return failed == 0 ? 0 : 1;
}
