#pragma once

#include <vector>

#include "jgl/quad.hpp"
#include "jgl/specialfn.hpp"

namespace jgl {

struct SitePoint {
  int s = 0;  // position
  int n = 1;  // level
  bool operator==(const SitePoint&) const = default;
};

enum class UIntegral { residue, contour };

struct KernelOptions {
  UIntegral method = UIntegral::residue;
  ContourSpec contour{0.0, 1.2, 64};
  // relative agreement required between two x-rule sizes
  double tol = 1e-12;
};

// K^gamma((s,n),(t,m))
double kernel_K(const Params& p, double gamma, SitePoint a, SitePoint b, const KernelOptions& opts = {});

struct Correlation {
  double value;  // raw determinant, clamped to [0, 1] when out_of_range
  double raw;
  bool out_of_range;  // raw outside [-1e-8, 1 + 1e-8]
};

std::vector<std::vector<double>> kernel_matrix(const Params& p, double gamma, const std::vector<SitePoint>& points,
                                               const KernelOptions& opts = {});
Correlation correlation(const Params& p, double gamma, const std::vector<SitePoint>& points,
                        const KernelOptions& opts = {});

// the particle-hole kernel with (x-1)^{r_n} / (u-1)^{r_m} and the strict indicator n > m
double kernel_complement(const Params& p, double gamma, SitePoint a, SitePoint b, const KernelOptions& opts = {});
// det[kernel_complement(z_i, z_j)]
double complement_correlation(const Params& p, double gamma, const std::vector<SitePoint>& points,
                              const KernelOptions& opts = {});

// int [1(n>=m) + 1_{[-1,eps]}(x)] Pbar_s Pbarbar_t (1-x)^{r_n-r_m+alpha_n} (1+x)^beta dx / norm_const
double discrete_jacobi_kernel(const Params& p, SitePoint a, SitePoint b, double eps);
// the limit of kernel_K obtained from the residue at u = x:
// 1(n>=m) int_{-1}^{1} (...) - int_{-1}^{eps} (...)
double discrete_jacobi_limit(const Params& p, SitePoint a, SitePoint b, double eps);
// int_{lo}^{hi} Pbar_s Pbarbar_t (1-x)^{r_n-r_m+alpha_n} (1+x)^beta dx / norm_const with -1 <= lo < hi <= 1
double jacobi_product_integral(const Params& p, SitePoint a, SitePoint b, double lo, double hi);

struct PearceyArgs {
  double beta;
  double sigma1;
  double nu1;
  double sigma2;
  double nu2;
};

// L^beta(sigma1, nu1^2; sigma2, nu2^2) * 2 sqrt(nu1 nu2) with L^beta = (y/x)^{beta/2} times
// -(nu2/nu1)^beta [pearcey_double_integral + pearcey_single_time] at the swapped arguments (sigma2, nu2; sigma1, nu1)
double hard_edge_pearcey(const PearceyArgs& args, double tol = 1e-9);
// 1(sigma1 > sigma2) sqrt(nu1 nu2) 2/(sigma1-sigma2) exp(-(nu1^2+nu2^2)/(sigma1-sigma2)) I_beta(2 nu1 nu2/(sigma1-sigma2))
double pearcey_single_time(const PearceyArgs& args);
// 1(sigma1 > sigma2) int_0^inf e^{-(sigma1-sigma2) x/2} sqrt(nu1 nu2) J_beta(nu1 sqrt(2x)) J_beta(nu2 sqrt(2x)) dx
double pearcey_single_time_integral(const PearceyArgs& args);
// sqrt(nu1 nu2) (4/(pi i)) int_0^inf int_C e^{(u^4-x^4)/2 + sigma2 u^2 - sigma1 x^2} (x/u)^beta J_beta(2 nu1 x) J_beta(2 nu2 u)
// x u / (x^2 - u^2) du dx
double pearcey_double_integral(const PearceyArgs& args, double tol = 1e-9);

// hard-edge scaling at gamma = N/2: sigma = (r_n - N)/sqrt(N), nu = (s + (alpha_n + beta + 1)/2)/N^{1/4}
struct HardEdgeCoordinates {
  double sigma;
  double nu;
};
HardEdgeCoordinates hard_edge_coordinates(const Params& p, double N, SitePoint a);
// odd-level site nearest to (sigma, nu): r_n = N + round(sigma sqrt(N)), s = round(nu N^{1/4})
SitePoint hard_edge_site(double N, double sigma, double nu);
// |N^{k/4} det[kernel_complement] - det[hard_edge_pearcey]| at the sites' own coordinates
struct HardEdgeComparison {
  double finite;
  double limit;
  double error;
};
HardEdgeComparison hard_edge_compare(const Params& p, double N, const std::vector<SitePoint>& points);

struct MehlerHeinePair {
  double lhs;
  double rhs;
};
MehlerHeinePair mehler_heine_pair(const Params& p, double nu, double z, double N);

// Phi^m_{r_m-k}(t): residue at w = 1 of Pbarbar_t(w) e^{-gamma (w-1)} / (w-1)^{r_m-k+1}
double biorthogonal_phi(const Params& p, double gamma, int m, int k, int t);

}  // namespace jgl
