#include <cstdio>
#include <string>
#include <vector>

#include "jgl/harness.hpp"

using namespace jgl;

namespace {

struct Criterion {
  int id;
  std::string label;
  std::vector<CheckResult> parts;
  double budget;  // seconds; 0 for none
};

bool report(const Criterion& c) {
  bool ok = true;
  double seconds = 0.0;
  std::string detail;
  for (const auto& r : c.parts) {
    ok = ok && r.passed;
    seconds += r.seconds;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s%s metric=%.3g tol=%.3g", detail.empty() ? "" : "; ", r.name.c_str(), r.metric,
                  r.tolerance);
    detail += buf;
    if (!r.detail.empty()) detail += " [" + r.detail + "]";
  }
  const bool in_time = c.budget <= 0.0 || seconds < c.budget;
  ok = ok && in_time;
  std::printf("%s %2d %s (%.1fs%s) %s\n", ok ? "PASS" : "FAIL", c.id, c.label.c_str(), seconds,
              in_time ? "" : ", over budget", detail.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  const auto& pairs = standard_pairs();
  const ParamPairs mc_pairs{{-0.5, -0.5}, {0.5, 0.5}, {0.3, -0.4}};
  bool all = true;
  all &= report({1, "orthonormality and recurrence", {check_orthonormality(pairs, 30), check_recurrence(pairs, 50)}, 10});
  all &= report({2, "summation identities", {check_identities(pairs, 20)}, 30});
  all &= report({3, "composition rule and biorthogonality", {check_composition(pairs, 1.1, 5, 10), check_biorthogonality(pairs, 5)}, 120});
  all &= report({4, "cotransition stochasticity", {check_cotransition(pairs, 6, 6)}, 0});
  all &= report({5, "single-level operator", {check_single_level(pairs, 0.9, 5, 6)}, 0});
  all &= report({6, "intertwining", {check_intertwining({{{-0.5, -0.5}, 0.25}, {{0.5, 1.0}, 0.2}}, 3, 8)}, 0});
  all &= report({7, "exact vs simulated correlations", {check_monte_carlo(mc_pairs, 1.0, 100000, 1)}, 600});
  all &= report({8, "gamma = 0 degeneration", {check_packed(pairs)}, 0});
  all &= report({9, "contour vs residue", {check_contour_residue(pairs, 50, 20240611)}, 0});
  all &= report({10, "Mehler-Heine", {check_mehler_heine()}, 0});
  all &= report({11, "edge limits", {check_discrete_jacobi_edge(), check_hard_edge({-0.5, 0.5, 0.7})}, 1200});
  all &= report({12, "Pearcey single-time identity", {check_pearcey_single_time()}, 0});
  return all ? 0 : 1;
}
