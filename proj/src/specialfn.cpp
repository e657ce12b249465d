#include "jgl/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jgl {

namespace {

void check_params(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("Params: alpha and beta must exceed -1");
}

// (2k+s+1) Gamma(k+s+1) written as ((2k+s+1)/(k+s+1)) Gamma(k+s+2); the ratio is 1 at k = 0
double log_shifted_gamma_product(int k, double s) {
  double ratio = (k == 0) ? 1.0 : (2.0 * k + s + 1.0) / (k + s + 1.0);
  return std::log(ratio) + log_gamma(k + s + 2.0);
}

}  // namespace

Params make_params(double alpha, double beta) {
  check_params(alpha, beta);
  return Params{alpha, beta, std::exp((alpha + beta + 1.0) * std::numbers::ln2 + log_gamma(alpha + 1.0))};
}

double level_alpha(const Params& p, int n) {
  if (n < 1) throw std::domain_error("level must be positive");
  return is_odd(n) ? p.alpha : p.alpha + 1.0;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

RecurrenceCoeffs recurrence_coeffs(const Params& p, double la, int k) {
  if (!(la > -1.0) || k < 0) throw std::domain_error("recurrence_coeffs: bad arguments");
  const double b = p.beta;
  const double s = la + b;
  if (k == 0) return {(b - la) / (s + 2.0), 0.0, 2.0 / (s + 2.0)};
  const double tk = 2.0 * k + s;
  return {(b - la) * s / (tk * (tk + 2.0)),
          2.0 * (k + la) * (k + b) / (tk * (tk + 1.0)),
          2.0 * (k + 1.0) * (k + 1.0 + s) / ((tk + 1.0) * (tk + 2.0))};
}

std::vector<double> jacobi_eval_all(const Params& p, double la, int kmax, double x) {
  std::vector<double> out(kmax + 1);
  out[0] = 1.0;
  double prev = 0.0;
  for (int k = 0; k < kmax; ++k) {
    auto rc = recurrence_coeffs(p, la, k);
    double next = ((x - rc.a) * out[k] - rc.b * prev) / rc.c;
    prev = out[k];
    out[k + 1] = next;
  }
  return out;
}

double jacobi_eval(const Params& p, double la, int k, double x) {
  if (k < 0) throw std::domain_error("jacobi_eval: negative degree");
  double cur = 1.0, prev = 0.0;
  for (int j = 0; j < k; ++j) {
    auto rc = recurrence_coeffs(p, la, j);
    double next = ((x - rc.a) * cur - rc.b * prev) / rc.c;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_norm_sq(const Params& p, double la, int k) {
  const double s = la + p.beta;
  double lg = (s + 1.0) * std::numbers::ln2 + log_gamma(k + la + 1.0) + log_gamma(k + p.beta + 1.0) -
              log_gamma(k + 1.0) - log_shifted_gamma_product(k, s);
  double v = std::exp(lg);
  if (!std::isfinite(v)) throw std::overflow_error("jacobi_norm_sq overflow at k=" + std::to_string(k));
  return v;
}

double jacobi_leading_coef(const Params& p, double la, int k) {
  if (k == 0) return 1.0;
  const double s = la + p.beta;
  return std::exp(log_gamma(2.0 * k + s + 1.0) - k * std::numbers::ln2 - log_gamma(k + 1.0) -
                  log_gamma(k + s + 1.0));
}

std::vector<double> jacobi_taylor_at_one(const Params& p, double la, int k) {
  // coefficient ratio from the hypergeometric form of P_k(1+y)
  std::vector<double> c(k + 1);
  c[0] = std::exp(log_gamma(k + la + 1.0) - log_gamma(k + 1.0) - log_gamma(la + 1.0));
  const double s = la + p.beta;
  for (int j = 0; j < k; ++j)
    c[j + 1] = c[j] * (s + k + 1.0 + j) * (k - j) / (2.0 * (j + 1.0) * (la + j + 1.0));
  return c;
}

Scalings scalings(const Params& p, int n, int k) {
  if (k < 0) throw std::domain_error("scalings: negative index");
  const double a = p.alpha, b = p.beta;
  double lcb, lcbb;
  if (is_odd(n)) {
    lcb = log_shifted_gamma_product(k, a + b) - log_gamma(k + b + 1.0);
    lcbb = log_gamma(k + 1.0) + log_gamma(a + 1.0) - log_gamma(a + k + 1.0);
  } else {
    lcb = std::log((2.0 * k + a + b + 2.0) / 2.0) + log_gamma(k + 1.0) + log_gamma(a + 1.0) -
          log_gamma(a + k + 2.0);
    lcbb = log_gamma(k + a + b + 2.0) - log_gamma(k + b + 1.0);
  }
  return {std::exp(lcb), std::exp(lcbb), std::exp(lcb - lcbb)};
}

double phi_indicator(const Params& p, int n, int k, int m) {
  if (k == -1) return 1.0;
  if (k < -1 || m < 0) throw std::domain_error("phi_indicator: bad index");
  bool on = is_odd(n) ? (k <= m) : (k < m);
  return on ? scalings(p, n, k).phi : 0.0;
}

double cbar_ratio(const Params& p, int n, int k) {
  const double s = p.alpha + p.beta;
  if (!is_odd(n)) return (2.0 * k + s + 4.0) / (2.0 * k + s + 2.0) * (k + 1.0) / (p.alpha + k + 2.0);
  if (k == 0) return (s + 3.0) / (p.beta + 1.0);
  return (2.0 * k + s + 3.0) / (2.0 * k + s + 1.0) * (k + s + 1.0) / (k + p.beta + 1.0);
}

RecurrenceCoeffs scaled_recurrence(const Params& p, int n, int k) {
  auto rc = recurrence_coeffs(p, level_alpha(p, n), k);
  RecurrenceCoeffs out{rc.a, 0.0, rc.c / cbar_ratio(p, n, k)};
  if (k > 0) out.b = cbar_ratio(p, n, k - 1) * rc.b;
  return out;
}

double pbar(const Params& p, int n, int k, double x) {
  return scalings(p, n, k).c_bar * jacobi_eval(p, level_alpha(p, n), k, x);
}

double pbarbar(const Params& p, int n, int k, double x) {
  return scalings(p, n, k).c_barbar * jacobi_eval(p, level_alpha(p, n), k, x);
}

double ptilde(const Params& p, double la, int k, double x) {
  return jacobi_eval(p, la, k, x) / std::sqrt(jacobi_norm_sq(p, la, k));
}

std::vector<double> pbarbar_taylor(const Params& p, int n, int k) {
  auto c = jacobi_taylor_at_one(p, level_alpha(p, n), k);
  const double cbb = scalings(p, n, k).c_barbar;
  for (auto& v : c) v *= cbb;
  return c;
}

double bessel_j_series(double nu, double x) {
  if (x < 0.0) throw std::domain_error("bessel_j: negative argument");
  if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : INFINITY);
  // alternating terms reach e^x / sqrt(x) in size, so accumulate in quad precision
  const __float128 q = static_cast<__float128>(x) * x / 4;
  __float128 term = 1, sum = 1;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (static_cast<__float128>(k) * (static_cast<__float128>(k) + nu));
    sum += term;
    double at = static_cast<double>(term < 0 ? -term : term);
    if (k > x && at < 1e-34 * std::fabs(static_cast<double>(sum)) + 1e-300) break;
  }
  return std::exp(nu * std::log(x / 2.0) - std::lgamma(nu + 1.0)) * static_cast<double>(sum);
}

double bessel_i_series(double nu, double x) {
  if (x < 0.0) throw std::domain_error("bessel_i: negative argument");
  if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : INFINITY);
  const double q = x * x / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(nu * std::log(x / 2.0) - std::lgamma(nu + 1.0)) * sum;
}

namespace {

// Hankel coefficients a_k(nu) = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k)
template <class F>
void hankel_terms(double nu, double x, F&& use) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double last = INFINITY;
  use(0, term);
  for (int k = 1; k < kBesselAsymptoticTerms; ++k) {
    double f = 2.0 * k - 1.0;
    term *= (mu - f * f) / (k * 8.0 * x);
    if (std::fabs(term) > last) break;
    last = std::fabs(term);
    use(k, term);
    if (term == 0.0 || std::fabs(term) < 1e-18) break;
  }
}

}  // namespace

double bessel_j_asymptotic(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j_asymptotic: argument must be positive");
  double P = 0.0, Q = 0.0;
  hankel_terms(nu, x, [&](int k, double t) {
    // (-1)^{floor(k/2)} with even k into P and odd k into Q
    double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) P += sgn * t; else Q += sgn * t;
  });
  const double w = x - (nu / 2.0 + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * std::cos(w) - Q * std::sin(w));
}

double bessel_i_asymptotic(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_i_asymptotic: argument must be positive");
  double S = 0.0;
  hankel_terms(nu, x, [&](int k, double t) { S += (k % 2 == 0) ? t : -t; });
  return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * S;
}

double bessel_j(double nu, double x) {
  if (!(nu > -1.0)) throw std::domain_error("bessel_j: order must exceed -1");
  if (x < 0.0) throw std::domain_error("bessel_j: negative argument");
  return x <= kBesselSwitch ? bessel_j_series(nu, x) : bessel_j_asymptotic(nu, x);
}

double bessel_i(double nu, double x) {
  if (!(nu > -1.0)) throw std::domain_error("bessel_i: order must exceed -1");
  if (x < 0.0) throw std::domain_error("bessel_i: negative argument");
  return x <= kBesselSwitch ? bessel_i_series(nu, x) : bessel_i_asymptotic(nu, x);
}

}  // namespace jgl
