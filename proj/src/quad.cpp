#include "jgl/quad.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>

namespace jgl {

double jacobi_weight_mass(double a, double b) {
  return std::exp((a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                  log_gamma(a + b + 2.0));
}

QuadratureRule gauss_jacobi_rule(double a, double b, int npts) {
  if (!(a > -1.0) || !(b > -1.0) || npts < 1) throw std::domain_error("gauss_jacobi_rule: bad arguments");
  const double s = a + b;
  // monic Jacobi matrix: diag(k) on the diagonal, off(k) joins rows k-1 and k (off(npts) feeds p_npts)
  Eigen::VectorXd diag(npts), off(npts + 1);
  for (int k = 0; k < npts; ++k) {
    const double tk = 2.0 * k + s;
    diag(k) = (k == 0) ? (b - a) / (s + 2.0) : (b * b - a * a) / (tk * (tk + 2.0));
  }
  off(0) = 0.0;
  for (int k = 1; k <= npts; ++k) {
    const double tk = 2.0 * k + s;
    double v = (k == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
                        : 4.0 * k * (k + a) * (k + b) * (k + s) / (tk * tk * (tk + 1.0) * (tk - 1.0));
    off(k) = std::sqrt(v);
  }
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  const double mass = jacobi_weight_mass(a, b);
  Eigen::VectorXd eig(npts);
  if (npts == 1) {
    eig(0) = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off.segment(1, npts - 1), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi_rule: eigenvalue iteration failed");
    eig = es.eigenvalues();
  }
  // orthonormal p_0..p_npts at x, with derivative of p_npts and the Christoffel sum of p_0..p_{npts-1}
  auto eval = [&](double x, double& pn, double& dpn, double& christoffel) {
    double prev = 0.0, cur = 1.0 / std::sqrt(mass), dprev = 0.0, dcur = 0.0;
    christoffel = cur * cur;
    for (int k = 0; k < npts; ++k) {
      double next = ((x - diag(k)) * cur - off(k) * prev) / off(k + 1);
      double dnext = ((x - diag(k)) * dcur + cur - off(k) * dprev) / off(k + 1);
      prev = cur;
      cur = next;
      dprev = dcur;
      dcur = dnext;
      if (k + 1 < npts) christoffel += cur * cur;
    }
    pn = cur;
    dpn = dcur;
  };
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  for (int i = 0; i < npts; ++i) {
    double x = eig(i), pn, dpn, chr;
    for (int it = 0; it < 2; ++it) {
      eval(x, pn, dpn, chr);
      if (dpn == 0.0 || !std::isfinite(dpn)) throw std::runtime_error("gauss_jacobi_rule: Newton step failed at node " + std::to_string(i));
      double step = pn / dpn;
      // keep the polish inside the eigenvalue's neighbourhood
      if (std::fabs(step) < 1e-8) x -= step;
    }
    eval(x, pn, dpn, chr);
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / chr;
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(double a, double b, int npts) {
  using Key = std::tuple<double, double, int>;
  static std::shared_mutex mu;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
  const Key key{a, b, npts};
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(a, b, npts));
  std::unique_lock lock(mu);
  return cache.emplace(key, rule).first->second;
}

double inner_product(const QuadratureRule& rule, const std::function<double(double)>& f,
                     const std::function<double(double)>& g) {
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]) * g(rule.nodes[i]);
  return acc;
}

cplx contour_integral(const ContourSpec& spec, const std::function<cplx(cplx)>& f, double tol, int max_points) {
  if (!(spec.center - spec.radius < -1.0 && spec.center + spec.radius > 1.0))
    throw std::domain_error("contour_integral: circle must enclose [-1, 1]");
  if (spec.num_points < 1 || (spec.num_points & (spec.num_points - 1)) != 0)
    throw std::domain_error("contour_integral: num_points must be a power of two");
  auto sample = [&](int k, int n) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    return f(spec.center + spec.radius * e) * spec.radius * e;
  };
  // compensated running sum; the sample magnitudes set the rounding floor of the comparison
  cplx sum = 0.0, comp = 0.0;
  double mag = 0.0;
  auto add = [&](cplx v) {
    mag += std::abs(v);
    cplx y = v - comp;
    cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  int n = spec.num_points;
  for (int k = 0; k < n; ++k) add(sample(k, n));
  cplx prev = sum / static_cast<double>(n);
  while (n < max_points) {
    for (int k = 1; k < 2 * n; k += 2) add(sample(k, 2 * n));
    n *= 2;
    cplx cur = sum / static_cast<double>(n);
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * mag / n;
    if (std::abs(cur - prev) < std::max(tol * std::max(1.0, std::abs(cur)), floor)) return cur;
    prev = cur;
  }
  throw NonConvergence("contour_integral did not converge", prev, sum / static_cast<double>(n));
}

int exp_poly_order(double gamma, int t, int r) {
  return r + t + static_cast<int>(std::ceil(2.0 * std::numbers::e * gamma)) + 60;
}

ExpPolyTaylor::ExpPolyTaylor(const Params& p, double gamma, int t, int m, int max_order) {
  // Taylor coefficients of Pbarbar_t(1 + y) by the hypergeometric ratio recursion in long double
  const long double la = level_alpha(p, m);
  const long double s = la + p.beta;
  std::vector<long double> pc(t + 1);
  pc[0] = static_cast<long double>(pbarbar_taylor(p, m, t)[0]);
  for (int j = 0; j < t; ++j)
    pc[j + 1] = pc[j] * (s + t + 1.0L + j) * (t - j) / (2.0L * (j + 1.0L) * (la + j + 1.0L));
  std::vector<long double> e(max_order + 1);
  e[0] = 1.0L;
  for (int k = 1; k <= max_order; ++k) e[k] = e[k - 1] * (-static_cast<long double>(gamma)) / k;
  g_.assign(max_order + 1, 0.0L);
  for (int j = 0; j <= max_order; ++j) {
    long double acc = 0.0L;
    for (int i = 0; i <= std::min(j, t); ++i) acc += pc[i] * e[j - i];
    g_[j] = acc;
  }
}

double ExpPolyTaylor::tail(int r, double y) const {
  long double acc = 0.0L, pw = 1.0L;
  for (int j = r; j < static_cast<int>(g_.size()); ++j) {
    acc += g_[j] * pw;
    pw *= y;
  }
  return static_cast<double>(acc);
}

std::pair<double, double> ExpPolyTaylor::tail_and_scale(int r, double y) const {
  long double acc = 0.0L, mag = 0.0L, pw = 1.0L;
  for (int j = r; j < static_cast<int>(g_.size()); ++j) {
    acc += g_[j] * pw;
    mag += std::fabs(g_[j]) * std::fabs(pw);
    pw *= y;
  }
  return {static_cast<double>(acc), static_cast<double>(mag)};
}

double ExpPolyTaylor::head(int r, double y) const {
  long double acc = 0.0L;
  for (int j = std::min(r, static_cast<int>(g_.size())) - 1; j >= 0; --j) acc = acc * y + g_[j];
  return static_cast<double>(acc);
}

double residue_u_oracle(const Params& p, double gamma, int t, int m, int r_m, double x) {
  if (!(x > -1.0 && x < 1.0)) throw std::domain_error("residue_u_oracle: x must lie in (-1, 1)");
  ExpPolyTaylor tay(p, gamma, t, m, exp_poly_order(gamma, t, r_m));
  const double sgn = (r_m % 2 == 0) ? 1.0 : -1.0;
  return -sgn * std::exp(-gamma) * tay.tail(r_m, x - 1.0);
}

double residue_u_two_poles(const Params& p, double gamma, int t, int m, int r_m, double x) {
  if (!(x > -1.0 && x < 1.0)) throw std::domain_error("residue_u_two_poles: x must lie in (-1, 1)");
  const double at_x = -std::exp(-gamma * x) * pbarbar(p, m, t, x) / std::pow(1.0 - x, r_m);
  // order-r pole at u = 1 after writing (1-u)^{-r} = (-1)^r (u-1)^{-r}; 1/(x-u) expands as
  // sum_i (u-1)^i / (x-1)^{i+1}
  ExpPolyTaylor tay(p, gamma, t, m, r_m);
  double coef = 0.0;
  for (int j = 0; j < r_m; ++j) {
    const int i = r_m - 1 - j;
    coef += std::exp(-gamma) * tay.coef(j) / std::pow(x - 1.0, i + 1);
  }
  const double sgn = (r_m % 2 == 0) ? 1.0 : -1.0;
  return at_x + sgn * coef;
}

}  // namespace jgl
