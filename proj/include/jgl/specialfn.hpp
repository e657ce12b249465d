#pragma once

#include <vector>

namespace jgl {

struct Params {
  double alpha;
  double beta;
  double norm_const;  // 2^{alpha+beta+1} Gamma(alpha+1)
};

Params make_params(double alpha, double beta);

// r_n = floor((n+1)/2), number of particles on level n
inline int level_count(int n) { return (n + 1) / 2; }
inline bool is_odd(int n) { return (n & 1) != 0; }
double level_alpha(const Params& p, int n);

double log_gamma(double x);

struct RecurrenceCoeffs {
  double a;
  double b;
  double c;
};

// x P_k = A_k P_k + B_k P_{k-1} + C_k P_{k+1} for P^{(level_alpha, beta)}
RecurrenceCoeffs recurrence_coeffs(const Params& p, double level_alpha, int k);

double jacobi_eval(const Params& p, double level_alpha, int k, double x);
// P_0..P_kmax at x
std::vector<double> jacobi_eval_all(const Params& p, double level_alpha, int kmax, double x);
double jacobi_norm_sq(const Params& p, double level_alpha, int k);
// leading coefficient of P_k^{(level_alpha, beta)}
double jacobi_leading_coef(const Params& p, double level_alpha, int k);
// Taylor coefficients of P_k^{(level_alpha, beta)}(1 + y) in powers of y (degree k)
std::vector<double> jacobi_taylor_at_one(const Params& p, double level_alpha, int k);

struct Scalings {
  double c_bar;
  double c_barbar;
  double phi;
};

Scalings scalings(const Params& p, int n, int k);
double phi_indicator(const Params& p, int n, int k, int m);
// recurrence in the Pbar basis: x Pbar_k = a Pbar_k + b Pbar_{k-1} + c Pbar_{k+1}
// b = (cbar_k / cbar_{k-1}) B_k is the right jump rate out of k-1 and
// c = (cbar_k / cbar_{k+1}) C_k is the left jump rate out of k+1
RecurrenceCoeffs scaled_recurrence(const Params& p, int n, int k);
// cbar_{k+1} / cbar_k as a rational expression
double cbar_ratio(const Params& p, int n, int k);

// Pbar_k^{(alpha_n)} = c_bar P_k, Pbarbar_k^{(alpha_n)} = c_barbar P_k, Ptilde = P_k / ||P_k||
double pbar(const Params& p, int n, int k, double x);
double pbarbar(const Params& p, int n, int k, double x);
double ptilde(const Params& p, double level_alpha, int k, double x);
// Taylor coefficients of Pbarbar_k^{(alpha_n)}(1 + y)
std::vector<double> pbarbar_taylor(const Params& p, int n, int k);

double bessel_j(double order, double x);
double bessel_i(double order, double x);
// branch selectors, exposed for the overlap test
double bessel_j_series(double order, double x);
double bessel_j_asymptotic(double order, double x);
double bessel_i_series(double order, double x);
double bessel_i_asymptotic(double order, double x);

inline constexpr double kBesselSwitch = 25.0;
inline constexpr int kBesselAsymptoticTerms = 40;

}  // namespace jgl
