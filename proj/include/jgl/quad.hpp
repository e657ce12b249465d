#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jgl/specialfn.hpp"

namespace jgl {

using cplx = std::complex<double>;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;  // weight (1-x)^a (1+x)^b
  double b = 0.0;
};

struct ContourSpec {
  double center = 0.0;
  double radius = 1.5;
  int num_points = 64;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, cplx previous, cplx last)
      : std::runtime_error(what), previous(previous), last(last) {}
  cplx previous;
  cplx last;
};

// 2^{a+b+1} B(a+1, b+1)
double jacobi_weight_mass(double a, double b);

QuadratureRule gauss_jacobi_rule(double a, double b, int npts);
// shared, thread-safe cache keyed by (a, b, npts)
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(double a, double b, int npts);

double inner_product(const QuadratureRule& rule, const std::function<double(double)>& f,
                     const std::function<double(double)>& g);

cplx contour_integral(const ContourSpec& spec, const std::function<cplx(cplx)>& f, double tol = 1e-10,
                      int max_points = 1 << 16);

// Taylor coefficients g_j about u = 1 of e^{-gamma (u-1)} Pbarbar_t^{(alpha_m)}(u)
class ExpPolyTaylor {
 public:
  ExpPolyTaylor(const Params& p, double gamma, int t, int m, int max_order);
  double coef(int j) const { return j < static_cast<int>(g_.size()) ? static_cast<double>(g_[j]) : 0.0; }
  int max_order() const { return static_cast<int>(g_.size()) - 1; }
  // sum_{j >= r} g_j y^{j-r}
  double tail(int r, double y) const;
  // the tail together with sum_{j >= r} |g_j| |y|^{j-r}, the rounding scale of the sum
  std::pair<double, double> tail_and_scale(int r, double y) const;
  // sum_{j < r} g_j y^j
  double head(int r, double y) const;

 private:
  // extended precision: the tail sums cancel strongly for large t
  std::vector<long double> g_;
};

// order needed so that the tail series is converged for |y| <= 2
int exp_poly_order(double gamma, int t, int r);

double residue_u_oracle(const Params& p, double gamma, int t, int m, int r_m, double x);
// the same quantity as the literal sum of the two residues (loses accuracy as x -> 1)
double residue_u_two_poles(const Params& p, double gamma, int t, int m, int r_m, double x);

}  // namespace jgl
