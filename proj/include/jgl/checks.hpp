#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jgl/specialfn.hpp"

namespace jgl {

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed error (or the quantity named in detail)
  double tolerance = 0.0;  // threshold the metric is compared against
  std::string detail;
  double seconds = 0.0;
};

using ParamPairs = std::vector<std::pair<double, double>>;

// (-1/2, -1/2), (-1/2, 1/2), (0.3, -0.4), (2, 2)
const ParamPairs& standard_pairs();

// |<Ptilde_k, Ptilde_l> - delta_kl| for k, l <= kmax under both level weights, and the three-term recurrence residual
CheckResult check_orthonormality(const ParamPairs& pairs, int kmax = 30);
CheckResult check_recurrence(const ParamPairs& pairs, int kmax = 50);
// the two pointwise summation identities (with the x = 1 limit) and the two tail-sum integral identities, s <= smax
CheckResult check_identities(const ParamPairs& pairs, int smax = 20);
// sum_r phi_{n-1}(s, r) Psi^n_{r_n - l}(r) = Psi^{n-1}_{r_{n-1} - l}(s)
CheckResult check_composition(const ParamPairs& pairs, double gamma = 1.1, int nmax = 5, int smax = 10);
// sum_s Psi^n_{r_n - k}(s) Phi^n_{r_n - l}(s) = delta_kl
CheckResult check_biorthogonality(const ParamPairs& pairs, int nmax = 5);
// row sums of the cotransition matrices and nonnegativity, parts <= max_part, levels <= nmax
CheckResult check_cotransition(const ParamPairs& pairs, int nmax = 6, int max_part = 6);
// psi = 1 + a(x-1) with a = fraction / stochastic_bound: entries, row sums and the semigroup identity
CheckResult check_single_level(const ParamPairs& pairs, double fraction = 0.9, int nmax = 5, int max_part = 6);
CheckResult check_intertwining(const std::vector<std::pair<std::pair<double, double>, double>>& pairs_with_a,
                               int nmax = 3, int cutoff = 8);
// gamma = 0 kernel determinants against the packed indicator
CheckResult check_packed(const ParamPairs& pairs);
CheckResult check_contour_residue(const ParamPairs& pairs, int samples = 50, unsigned long long seed = 20240611);
CheckResult check_complement(const ParamPairs& pairs);
CheckResult check_mehler_heine();
// one- and two-point discrete Jacobi limit errors decrease over N in {20, 40, 80}
CheckResult check_discrete_jacobi_edge();
// max error over a fixed configuration grid, decreasing over N with 20% slack, per beta and k in {1, 2}
CheckResult check_hard_edge(const std::vector<double>& betas, const std::vector<double>& sizes = {50.0, 100.0, 200.0});
CheckResult check_pearcey_single_time();

}  // namespace jgl
