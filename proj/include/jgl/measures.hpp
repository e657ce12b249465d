#pragma once

#include <vector>

#include "jgl/specialfn.hpp"

namespace jgl {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, length r_level, trailing zeros explicit
  int level = 1;

  int count() const { return static_cast<int>(parts.size()); }
  // lambda~_i = lambda_i + r_n - i (1-based i); index here is 0-based
  int shifted(int i) const { return parts[i] + count() - 1 - i; }
  std::vector<int> shifted_all() const;
  bool operator==(const Partition&) const = default;
};

Partition make_partition(int level, std::vector<int> parts);
Partition zero_partition(int level);
Partition from_shifted(int level, const std::vector<int>& shifted);
// every partition at `level` with all parts <= max_part
std::vector<Partition> enumerate_partitions(int level, int max_part);
// every mu at level - 1 with mu interlacing lam
std::vector<Partition> enumerate_lower(const Partition& lam);
// partitions nu at the same level with |nu~_i - mu~_i| <= width for all i
std::vector<Partition> enumerate_band(const Partition& mu, int width);

bool interlaces(const Partition& lower, const Partition& upper);
// det[1(lower~_i < upper~_j)] (lower level even) or det[1(lower~_i <= upper~_j)] (odd), padded with lower~ = -1
int interlace_determinant(const Partition& lower, const Partition& upper);

// d_lambda^{(n)}(1,...,1) by the branching recursion, memoized
double dim_at_one(const Params& p, const Partition& lam);

// T^n_{n-1}(lam, mu) for lam at level n and mu at level n - 1
double cotransition(const Params& p, const Partition& lam, const Partition& mu);
double cotransition_det_form(const Params& p, const Partition& lam, const Partition& mu);

struct PsiSpec {
  enum class Kind { exponential, linear, constant_one };
  Kind kind = Kind::constant_one;
  double param = 0.0;  // gamma for exponential, a for linear

  static PsiSpec exponential(double gamma) { return {Kind::exponential, gamma}; }
  static PsiSpec linear(double a) { return {Kind::linear, a}; }
  static PsiSpec one() { return {Kind::constant_one, 0.0}; }

  double operator()(double x) const;
  // E^{(k)}(1)
  double derivative_at_one(int k) const;
};

// R^E_m(x)
double taylor_remainder(const PsiSpec& spec, int m, double x);
// R^E_m(x) / (x-1)^m for m >= 1 and E(x) for m <= 0; smooth through x = 1
double taylor_remainder_quotient(const PsiSpec& spec, int m, double x);

// Psi^{n,E}_{r_n - l}(s) for s = 0..smax, weight exponents (alpha_n, beta)
// exact moments of the Taylor expansion of E at 1, summed in quad precision
std::vector<double> psi_values(const Params& p, const PsiSpec& spec, int n, int l, int smax);
// the same values by Gauss-Jacobi quadrature (absolute accuracy near machine epsilon)
std::vector<double> psi_values_quadrature(const Params& p, const PsiSpec& spec, int n, int l, int smax);
double psi_fn(const Params& p, const PsiSpec& spec, int n, int l, int s);

// P_n^psi(lam) = det[Psi^n_{r_n-i}(lam~_j)] d_lam
double measure_weight(const Params& p, const PsiSpec& spec, const Partition& lam);

// T_n^psi(mu, lam) for polynomial psi = sum_k coeffs[k] (x-1)^k, exact banded evaluation
double transition_entry(const Params& p, const std::vector<double>& psi_coeffs, const Partition& mu,
                        const Partition& lam);
// psi = 1 + a(x-1)
double single_level_transition(const Params& p, int n, double a, const Partition& mu, const Partition& lam);

enum class Parity { even, odd };
// minimum of the three closed-form lower bounds for 1/a, non-finite terms skipped
double stochastic_bound(const Params& p, Parity parity);
// sup_k of (right rate + left rate - A_k + 1), the diagonal-dominance threshold for 1/a
double stochastic_bound_sufficient(const Params& p, Parity parity);

struct EnumerationReport {
  double min_entry;
  double max_row_sum_error;
  int rows;
};
// enumerates T_n^psi rows for all mu with parts <= max_part
EnumerationReport enumerate_transition(const Params& p, int n, double a, int max_part);

// max |(T^{n+1}_n T^psi_n)(mu, lam) - (T^psi_{n+1} T^{n+1}_n)(mu, lam)| over parts <= cutoff
double intertwining_discrepancy(const Params& p, int n, double a, int cutoff);

}  // namespace jgl
