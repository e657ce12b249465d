#include "jgl/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jgl {

namespace {

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

void check_site(SitePoint a) {
  if (a.s < 0 || a.n < 1) throw std::invalid_argument("site must have s >= 0 and n >= 1");
}

// int e^{gamma (x-1)} Pbar_s(x)/norm_const U(x) (1-x)^{r_n + alpha_n} (1+x)^beta dx for a given u-integral U
template <class UFun>
double double_term(const Params& p, double gamma, SitePoint a, SitePoint b, const UFun& U, double tol,
                   const char* what) {
  const double la = level_alpha(p, a.n);
  const int rn = level_count(a.n);
  const double cbar = scalings(p, a.n, a.s).c_bar / p.norm_const;
  // returns the value and the sum of absolute contributions, the rounding scale of the sum
  auto eval = [&](int npts) {
    auto rule = cached_gauss_jacobi_rule(la + rn, p.beta, npts);
    double acc = 0.0, mag = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double x = rule->nodes[i];
      const double term = rule->weights[i] * std::exp(gamma * (x - 1.0)) * cbar * jacobi_eval(p, la, a.s, x) * U(x);
      acc += term;
      mag += std::fabs(term);
    }
    return std::pair{acc, mag};
  };
  int n1 = 20 + a.s + b.s + static_cast<int>(std::ceil(2.0 * gamma));
  auto v1 = eval(n1);
  for (int iter = 0; iter < 8; ++iter) {
    const int n2 = n1 + n1 / 2 + 10;
    const auto v2 = eval(n2);
    const double floor = 256.0 * std::numeric_limits<double>::epsilon() * v2.second;
    if (std::fabs(v2.first - v1.first) <= std::max(tol * std::max(1.0, std::fabs(v2.first)), floor)) return v2.first;
    n1 = n2;
    v1 = v2;
  }
  throw NonConvergence(std::string("kernel: x-quadrature of the double integral did not converge (") + what + ")",
                       v1.first, v1.first);
}

// <Pbar_s / norm_const, Pbarbar_t>_{(alpha_n + r_n - r_m, beta)}, exact Gauss rule
double single_term(const Params& p, SitePoint a, SitePoint b) {
  const double la = level_alpha(p, a.n);
  const double lb = level_alpha(p, b.n);
  const int shift = level_count(a.n) - level_count(b.n);
  const int npts = (a.s + b.s) / 2 + 2;
  auto rule = cached_gauss_jacobi_rule(la + shift, p.beta, npts);
  const double ca = scalings(p, a.n, a.s).c_bar / p.norm_const;
  const double cb = scalings(p, b.n, b.s).c_barbar;
  double acc = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double x = rule->nodes[i];
    acc += rule->weights[i] * jacobi_eval(p, la, a.s, x) * jacobi_eval(p, lb, b.s, x);
  }
  return ca * cb * acc;
}

// e^{gamma} (1/2 pi i) oint e^{-gamma u} Pbarbar_t(u) / ((1-u)^r (x-u)) du, taking whichever of the tail series
// and the two-residue form has the smaller rounding scale at x
class ScaledUIntegral {
 public:
  ScaledUIntegral(const Params& p, double gamma, int t, int m)
      : p_(p), gamma_(gamma), t_(t), m_(m), r_(level_count(m)), la_(level_alpha(p, m)),
        cbb_(scalings(p, m, t).c_barbar), tay_(p, gamma, t, m, exp_poly_order(gamma, t, level_count(m))) {}

  double operator()(double x) const {
    const double y = x - 1.0;
    const double sgn = sign_pow(r_);
    const auto [tail, tail_scale] = tay_.tail_and_scale(r_, y);
    const double series = -sgn * tail;
    const double first = -std::exp(-gamma_ * y) * cbb_ * jacobi_eval(p_, la_, t_, x) / std::pow(1.0 - x, r_);
    long double head = 0.0L, head_scale = 0.0L, pw = 1.0L;
    for (int j = r_ - 1; j >= 0; --j) {
      pw /= y;
      const long double term = static_cast<long double>(tay_.coef(j)) * pw;
      head += term;
      head_scale += std::fabs(term);
    }
    const double poles = first + sgn * static_cast<double>(head);
    const double poles_scale = std::fabs(first) + static_cast<double>(head_scale);
    if (std::isfinite(poles_scale) && poles_scale < tail_scale) return poles;
    return series;
  }

 private:
  Params p_;
  double gamma_;
  int t_, m_, r_;
  double la_, cbb_;
  ExpPolyTaylor tay_;
};

// P_t^{(a,b)}(u) by the three-term recurrence, stable for u off [-1, 1]
cplx jacobi_complex(double a, double b, int t, cplx u) {
  cplx prev = 1.0;
  if (t == 0) return prev;
  cplx cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (u - 1.0);
  for (int k = 2; k <= t; ++k) {
    const double s = 2.0 * k + a + b;
    const double c0 = 2.0 * k * (k + a + b) * (s - 2.0);
    const cplx next = ((s - 1.0) * (s * (s - 2.0) * u + a * a - b * b) * cur - 2.0 * (k + a - 1.0) * (k + b - 1.0) * s * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx contour_u_integral(const Params& p, double gamma, int t, int m, double x, const KernelOptions& opts) {
  const int rm = level_count(m);
  const double la = level_alpha(p, m);
  const double cbb = scalings(p, m, t).c_barbar;
  auto f = [&](cplx u) {
    return std::exp(-u * gamma) * cbb * jacobi_complex(la, p.beta, t, u) / (std::pow(1.0 - u, rm) * (x - u));
  };
  return contour_integral(opts.contour, f);
}

}  // namespace

double kernel_K(const Params& p, double gamma, SitePoint a, SitePoint b, const KernelOptions& opts) {
  check_site(a);
  check_site(b);
  if (!(gamma >= 0.0)) throw std::invalid_argument("kernel_K: gamma must be nonnegative");
  double dbl;
  if (opts.method == UIntegral::residue) {
    // e^{-gamma} of the oracle is folded into e^{gamma (x-1)}
    ScaledUIntegral U(p, gamma, b.s, b.n);
    dbl = double_term(p, gamma, a, b, U, opts.tol, "residue");
  } else {
    auto U = [&](double x) {
      const cplx v = contour_u_integral(p, gamma, b.s, b.n, x, opts);
      if (std::fabs(v.imag()) > 1e-10 * std::max(1.0, std::fabs(v.real())))
        throw std::runtime_error("kernel_K: contour u-integral is not real");
      return v.real() * std::exp(gamma);
    };
    dbl = double_term(p, gamma, a, b, U, std::max(opts.tol, 1e-11), "contour");
  }
  return dbl + (a.n >= b.n ? single_term(p, a, b) : 0.0);
}

std::vector<std::vector<double>> kernel_matrix(const Params& p, double gamma, const std::vector<SitePoint>& points,
                                               const KernelOptions& opts) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw std::invalid_argument("correlation: points must be pairwise distinct");
  const std::size_t k = points.size();
  std::vector<std::vector<double>> M(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) M[i][j] = kernel_K(p, gamma, points[i], points[j], opts);
  return M;
}

namespace {
double det_of(const std::vector<std::vector<double>>& M) {
  const int k = static_cast<int>(M.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd A(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) A(i, j) = M[i][j];
  return A.partialPivLu().determinant();
}
}  // namespace

Correlation correlation(const Params& p, double gamma, const std::vector<SitePoint>& points,
                        const KernelOptions& opts) {
  const double raw = det_of(kernel_matrix(p, gamma, points, opts));
  const bool out = raw < -1e-8 || raw > 1.0 + 1e-8;
  return {out ? std::clamp(raw, 0.0, 1.0) : raw, raw, out};
}

double kernel_complement(const Params& p, double gamma, SitePoint a, SitePoint b, const KernelOptions& opts) {
  check_site(a);
  check_site(b);
  if (!(gamma >= 0.0)) throw std::invalid_argument("kernel_complement: gamma must be nonnegative");
  const int rn = level_count(a.n), rm = level_count(b.n);
  // (u-1)^{r_m} = (-1)^{r_m} (1-u)^{r_m} and (x-1)^{r_n} = (-1)^{r_n} (1-x)^{r_n}
  ScaledUIntegral U(p, gamma, b.s, b.n);
  const double pref = sign_pow(rn + rm);
  const double dbl = double_term(p, gamma, a, b, [&](double x) { return pref * U(x); }, opts.tol, "complement");
  const double single = a.n > b.n ? sign_pow(rn - rm) * single_term(p, a, b) : 0.0;
  return -dbl - single;
}

double complement_correlation(const Params& p, double gamma, const std::vector<SitePoint>& points,
                              const KernelOptions& opts) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw std::invalid_argument("correlation: points must be pairwise distinct");
  std::vector<std::vector<double>> M(points.size(), std::vector<double>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) M[i][j] = kernel_complement(p, gamma, points[i], points[j], opts);
  return det_of(M);
}

namespace {

// int_{-1}^{eps} of the product, eps < 1, by an affine map of a Jacobi (0, beta) rule
double lower_piece(const Params& p, SitePoint a, SitePoint b, double eps, double expo) {
  const double la = level_alpha(p, a.n), lb = level_alpha(p, b.n);
  const double ca = scalings(p, a.n, a.s).c_bar / p.norm_const;
  const double cb = scalings(p, b.n, b.s).c_barbar;
  const double half = (eps + 1.0) / 2.0;
  auto eval = [&](int npts) {
    auto rule = cached_gauss_jacobi_rule(0.0, p.beta, npts);
    double acc = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double x = -1.0 + half * (rule->nodes[i] + 1.0);
      acc += rule->weights[i] * jacobi_eval(p, la, a.s, x) * jacobi_eval(p, lb, b.s, x) * std::pow(1.0 - x, expo);
    }
    return ca * cb * acc * std::pow(half, p.beta + 1.0);
  };
  int n1 = (a.s + b.s) / 2 + 16;
  double v1 = eval(n1);
  for (int iter = 0; iter < 8; ++iter) {
    const int n2 = 2 * n1;
    const double v2 = eval(n2);
    if (std::fabs(v2 - v1) <= 1e-14 * std::max(1.0, std::fabs(v2))) return v2;
    n1 = n2;
    v1 = v2;
  }
  return v1;
}

// int_{eps}^{1} of the product for expo > -1 by an affine map of a Jacobi (expo, 0) rule
double upper_piece(const Params& p, SitePoint a, SitePoint b, double eps, double expo) {
  const double la = level_alpha(p, a.n), lb = level_alpha(p, b.n);
  const double ca = scalings(p, a.n, a.s).c_bar / p.norm_const;
  const double cb = scalings(p, b.n, b.s).c_barbar;
  const double half = (1.0 - eps) / 2.0;
  auto eval = [&](int npts) {
    auto rule = cached_gauss_jacobi_rule(expo, 0.0, npts);
    double acc = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double x = eps + half * (rule->nodes[i] + 1.0);
      acc += rule->weights[i] * jacobi_eval(p, la, a.s, x) * jacobi_eval(p, lb, b.s, x) * std::pow(1.0 + x, p.beta);
    }
    return ca * cb * acc * std::pow(half, expo + 1.0);
  };
  int n1 = (a.s + b.s) / 2 + 16;
  double v1 = eval(n1);
  for (int iter = 0; iter < 8; ++iter) {
    const int n2 = 2 * n1;
    const double v2 = eval(n2);
    if (std::fabs(v2 - v1) <= 1e-14 * std::max(1.0, std::fabs(v2))) return v2;
    n1 = n2;
    v1 = v2;
  }
  return v1;
}

// int_{-1}^{eps} of Pbar_s Pbarbar_t (1-x)^{r_n-r_m+alpha_n} (1+x)^beta / norm_const
double lower_integral(const Params& p, SitePoint a, SitePoint b, double eps) {
  const double expo = level_count(a.n) - level_count(b.n) + level_alpha(p, a.n);
  if (eps <= -1.0) return 0.0;
  if (eps >= 1.0) {
    if (expo <= -1.0) throw std::domain_error("discrete_jacobi_kernel: integral diverges at x = 1");
    SitePoint aa = a;
    const double full = [&] {
      const int npts = (a.s + b.s) / 2 + 2;
      auto rule = cached_gauss_jacobi_rule(expo, p.beta, npts);
      const double la = level_alpha(p, a.n), lb = level_alpha(p, b.n);
      double acc = 0.0;
      for (int i = 0; i < npts; ++i)
        acc += rule->weights[i] * jacobi_eval(p, la, aa.s, rule->nodes[i]) * jacobi_eval(p, lb, b.s, rule->nodes[i]);
      return acc * scalings(p, a.n, a.s).c_bar / p.norm_const * scalings(p, b.n, b.s).c_barbar;
    }();
    return full;
  }
  if (eps > 0.0 && expo > -1.0) return lower_integral(p, a, b, 1.0) - upper_piece(p, a, b, eps, expo);
  return lower_piece(p, a, b, eps, expo);
}

}  // namespace

double jacobi_product_integral(const Params& p, SitePoint a, SitePoint b, double lo, double hi) {
  if (!(lo == -1.0) || !(hi > lo) || hi > 1.0)
    throw std::invalid_argument("jacobi_product_integral: lower limit must be -1 and -1 < hi <= 1");
  return lower_integral(p, a, b, hi);
}

double discrete_jacobi_kernel(const Params& p, SitePoint a, SitePoint b, double eps) {
  check_site(a);
  check_site(b);
  if (!(eps > -1.0 - 1e-300) || eps > 1.0) throw std::invalid_argument("discrete_jacobi_kernel: eps must lie in [-1, 1]");
  const double lower = lower_integral(p, a, b, eps);
  return (a.n >= b.n ? lower_integral(p, a, b, 1.0) : 0.0) + lower;
}

double discrete_jacobi_limit(const Params& p, SitePoint a, SitePoint b, double eps) {
  check_site(a);
  check_site(b);
  const double lower = lower_integral(p, a, b, std::min(eps, 1.0));
  const double full = a.n >= b.n ? lower_integral(p, a, b, 1.0) : 0.0;
  return full - lower;
}

namespace {

using lcplx = std::complex<long double>;

// sum_k (-w)^k / (k! Gamma(beta + k + 1)), so that J_beta(2 nu z) = (nu z)^beta E(nu^2 z^2)
lcplx bessel_entire(long double beta, lcplx w) {
  lcplx term = 1.0L / std::tgamma(beta + 1.0L);
  lcplx sum = term;
  const long double aw = std::abs(w);
  for (int k = 1; k < 2000; ++k) {
    term *= -w / (static_cast<long double>(k) * (beta + k));
    sum += term;
    if (k > aw && std::abs(term) <= 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

struct Node {
  double x;
  double w;
};

// panels on [0, top]: [0, smallest] with weight x^power by a Jacobi rule, geometric panels up to 1, unit-ish panels above
std::vector<Node> graded_nodes(double top, double smallest, double power, int q) {
  std::vector<Node> out;
  auto gl = cached_gauss_jacobi_rule(0.0, 0.0, q);
  auto add_panel = [&](double lo, double hi) {
    const double h = (hi - lo) / 2.0;
    for (int i = 0; i < q; ++i) {
      const double x = lo + h * (gl->nodes[i] + 1.0);
      out.push_back({x, gl->weights[i] * h * std::pow(x, power)});
    }
  };
  auto gj = cached_gauss_jacobi_rule(0.0, power, q);
  const double h0 = smallest / 2.0;
  for (int i = 0; i < q; ++i)
    out.push_back({h0 * (gj->nodes[i] + 1.0), gj->weights[i] * std::pow(h0, power + 1.0)});
  const double pivot = std::min(1.0, top);
  double lo = smallest;
  while (lo < pivot) {
    const double hi = std::min(2.0 * lo, pivot);
    add_panel(lo, hi);
    lo = hi;
  }
  const int n_upper = static_cast<int>(std::ceil((top - pivot) / 0.5));
  for (int j = 0; j < n_upper; ++j) add_panel(pivot + (top - pivot) * j / n_upper, pivot + (top - pivot) * (j + 1) / n_upper);
  return out;
}

double pearcey_double_at(const PearceyArgs& g, int q) {
  const double cut = 45.0;
  const double a_top = -g.sigma1 + std::sqrt(g.sigma1 * g.sigma1 + 2.0 * cut);
  const double b_top = std::sqrt(2.0 * cut);
  const auto bn = graded_nodes(b_top, 1e-18, 0.0, q);
  std::vector<lcplx> h(bn.size());
  std::vector<double> bx(bn.size());
  const long double nu2sq = static_cast<long double>(g.nu2) * g.nu2;
  for (std::size_t j = 0; j < bn.size(); ++j) {
    const long double b = bn[j].x;
    bx[j] = bn[j].x;
    h[j] = static_cast<long double>(bn[j].w) * std::exp(lcplx(-b * b / 2.0L, g.sigma2 * b)) *
           bessel_entire(g.beta, lcplx(0.0L, nu2sq * b));
  }
  const auto an = graded_nodes(std::max(a_top, 1.0), 1e-18, g.beta, q);
  long double acc = 0.0L;
  const long double nu1sq = static_cast<long double>(g.nu1) * g.nu1;
  for (const auto& node : an) {
    const long double a = node.x;
    const long double outer = std::exp(-a * a / 2.0L - g.sigma1 * a) * bessel_entire(g.beta, lcplx(nu1sq * a, 0.0L)).real();
    if (outer == 0.0L) continue;
    long double re = 0.0L;
    for (std::size_t j = 0; j < h.size(); ++j) {
      // Re(h / (a - i b)) = (Re h * a - Im h * b) / (a^2 + b^2)
      const long double b = bx[j];
      re += (h[j].real() * a - h[j].imag() * b) / (a * a + b * b);
    }
    acc += static_cast<long double>(node.w) * outer * re;
  }
  const double pref = -(2.0 / std::numbers::pi) * std::sqrt(g.nu1 * g.nu2) * std::pow(g.nu1 * g.nu2, g.beta);
  return pref * static_cast<double>(acc);
}

// e^{-z} I_beta(z)
double scaled_bessel_i(double beta, double z) {
  if (z < 600.0) return bessel_i(beta, z) * std::exp(-z);
  const double mu = 4.0 * beta * beta;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= -(mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * z);
    sum += term;
    if (std::fabs(term) < 1e-17) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

void check_pearcey(const PearceyArgs& g) {
  if (!(g.beta > -1.0)) throw std::invalid_argument("pearcey: beta must exceed -1");
  if (!(g.nu1 > 0.0) || !(g.nu2 > 0.0)) throw std::invalid_argument("pearcey: nu1, nu2 must be positive");
}

}  // namespace

double pearcey_double_integral(const PearceyArgs& args, double tol) {
  check_pearcey(args);
  int q = 16;
  double v1 = pearcey_double_at(args, q);
  for (int iter = 0; iter < 4; ++iter) {
    q *= 2;
    const double v2 = pearcey_double_at(args, q);
    if (std::fabs(v2 - v1) <= tol * std::max(1.0, std::fabs(v2))) return v2;
    v1 = v2;
  }
  throw NonConvergence("pearcey: panel refinement did not converge", v1, v1);
}

double pearcey_single_time(const PearceyArgs& g) {
  check_pearcey(g);
  const double d = g.sigma1 - g.sigma2;
  if (!(d > 0.0)) return 0.0;
  const double z = 2.0 * g.nu1 * g.nu2 / d;
  const double diff = g.nu1 - g.nu2;
  return std::sqrt(g.nu1 * g.nu2) * (2.0 / d) * std::exp(-diff * diff / d) * scaled_bessel_i(g.beta, z);
}

double pearcey_single_time_integral(const PearceyArgs& g) {
  check_pearcey(g);
  const double d = g.sigma1 - g.sigma2;
  if (!(d > 0.0)) return 0.0;
  // v = 2x': (1/2) int_0^inf e^{-d v / 4} J_beta(nu1 sqrt v) J_beta(nu2 sqrt v) dv
  const double top = 4.0 * 42.0 / d;
  auto integrate = [&](int q) {
    const double first = 1e-3;
    // on [0, first] J_beta(nu sqrt v) = (nu/2)^beta v^{beta/2} E(nu^2 v / 4)
    auto gj = cached_gauss_jacobi_rule(0.0, g.beta, q);
    long double acc = 0.0L;
    const double h0 = first / 2.0;
    for (int i = 0; i < q; ++i) {
      const double v = h0 * (gj->nodes[i] + 1.0);
      const long double e1 = bessel_entire(g.beta, lcplx(g.nu1 * g.nu1 * v / 4.0, 0.0)).real();
      const long double e2 = bessel_entire(g.beta, lcplx(g.nu2 * g.nu2 * v / 4.0, 0.0)).real();
      acc += gj->weights[i] * std::pow(h0, g.beta + 1.0) * std::exp(-d * v / 4.0) * e1 * e2;
    }
    acc *= std::pow(g.nu1 * g.nu2 / 4.0, g.beta);
    auto gl = cached_gauss_jacobi_rule(0.0, 0.0, q);
    double lo = first;
    while (lo < top) {
      const double hi = lo < 1.0 ? std::min(2.0 * lo, 1.0) : std::min(lo + 1.0, top);
      const double h = (hi - lo) / 2.0;
      for (int i = 0; i < q; ++i) {
        const double v = lo + h * (gl->nodes[i] + 1.0);
        acc += gl->weights[i] * h * std::exp(-d * v / 4.0) * bessel_j(g.beta, g.nu1 * std::sqrt(v)) *
               bessel_j(g.beta, g.nu2 * std::sqrt(v));
      }
      lo = hi;
    }
    return 0.5 * std::sqrt(g.nu1 * g.nu2) * static_cast<double>(acc);
  };
  const double a = integrate(20), b = integrate(40);
  if (std::fabs(a - b) > 1e-9 * std::max(1.0, std::fabs(b)))
    throw NonConvergence("pearcey: single-time integral did not converge", a, b);
  return b;
}

double hard_edge_pearcey(const PearceyArgs& args, double tol) {
  const PearceyArgs swapped{args.beta, args.sigma2, args.nu2, args.sigma1, args.nu1};
  const double conj = std::pow(args.nu2 / args.nu1, args.beta);
  return -conj * (pearcey_double_integral(swapped, tol) + pearcey_single_time(swapped));
}

HardEdgeCoordinates hard_edge_coordinates(const Params& p, double N, SitePoint a) {
  const double shift = 0.5 * (level_alpha(p, a.n) + p.beta + 1.0);
  return {(level_count(a.n) - N) / std::sqrt(N), (a.s + shift) / std::pow(N, 0.25)};
}

SitePoint hard_edge_site(double N, double sigma, double nu) {
  const int r = static_cast<int>(std::lround(N + sigma * std::sqrt(N)));
  const int s = static_cast<int>(std::lround(nu * std::pow(N, 0.25)));
  if (r < 1 || s < 0) throw std::invalid_argument("hard_edge_site: coordinates outside the lattice");
  return {s, 2 * r - 1};
}

HardEdgeComparison hard_edge_compare(const Params& p, double N, const std::vector<SitePoint>& points) {
  const std::size_t k = points.size();
  std::vector<HardEdgeCoordinates> c;
  for (const auto& a : points) c.push_back(hard_edge_coordinates(p, N, a));
  std::vector<std::vector<double>> M(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      M[i][j] = hard_edge_pearcey({p.beta, c[i].sigma, c[i].nu, c[j].sigma, c[j].nu});
  const double finite = std::pow(N, 0.25 * static_cast<double>(k)) * complement_correlation(p, 0.5 * N, points);
  const double limit = det_of(M);
  return {finite, limit, std::fabs(finite - limit)};
}

MehlerHeinePair mehler_heine_pair(const Params& p, double nu, double z, double N) {
  if (!(nu > 0.0) || !(z > 0.0) || !(N >= 1.0)) throw std::invalid_argument("mehler_heine_pair: nu, z > 0, N >= 1");
  const double q = std::pow(N, 0.25);
  const int k = static_cast<int>(std::floor(nu * q));
  const double x = z / std::sqrt(N) - 1.0;
  const double lhs = std::pow(N, -p.beta / 4.0) * sign_pow(k) * jacobi_eval(p, p.alpha, k, x);
  const double rhs = std::pow(std::sqrt(2.0 * z) / 2.0, -p.beta) * bessel_j(p.beta, nu * std::sqrt(2.0 * z));
  return {lhs, rhs};
}

double biorthogonal_phi(const Params& p, double gamma, int m, int k, int t) {
  const int deg = level_count(m) - k;
  if (deg < 0) return 0.0;
  ExpPolyTaylor tay(p, gamma, t, m, deg);
  return tay.coef(deg);
}

}  // namespace jgl
