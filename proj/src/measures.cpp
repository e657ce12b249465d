#include "jgl/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "jgl/quad.hpp"

namespace jgl {

namespace {

double det_of(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

void check_same_level(const Partition& a, const Partition& b) {
  if (a.level != b.level) throw std::invalid_argument("partitions must share a level");
}

void fill_decreasing(int r, int max_part, std::vector<int>& cur, std::vector<Partition>& out, int level) {
  if (static_cast<int>(cur.size()) == r) {
    out.push_back(Partition{cur, level});
    return;
  }
  int hi = cur.empty() ? max_part : cur.back();
  for (int v = 0; v <= hi; ++v) {
    cur.push_back(v);
    fill_decreasing(r, max_part, cur, out, level);
    cur.pop_back();
  }
}

}  // namespace

std::vector<int> Partition::shifted_all() const {
  std::vector<int> s(parts.size());
  for (int i = 0; i < count(); ++i) s[i] = shifted(i);
  return s;
}

Partition make_partition(int level, std::vector<int> parts) {
  if (level < 1) throw std::invalid_argument("partition level must be positive");
  const int r = level_count(level);
  if (static_cast<int>(parts.size()) > r) throw std::invalid_argument("partition has too many parts");
  parts.resize(r, 0);
  for (int i = 0; i < r; ++i) {
    if (parts[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
    if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  return Partition{std::move(parts), level};
}

Partition zero_partition(int level) { return make_partition(level, {}); }

Partition from_shifted(int level, const std::vector<int>& shifted) {
  const int r = level_count(level);
  if (static_cast<int>(shifted.size()) != r) throw std::invalid_argument("shifted coordinates have wrong length");
  std::vector<int> parts(r);
  for (int i = 0; i < r; ++i) parts[i] = shifted[i] - (r - 1 - i);
  return make_partition(level, parts);
}

std::vector<Partition> enumerate_partitions(int level, int max_part) {
  std::vector<Partition> out;
  std::vector<int> cur;
  fill_decreasing(level_count(level), max_part, cur, out, level);
  return out;
}

std::vector<Partition> enumerate_lower(const Partition& lam) {
  if (lam.level < 2) throw std::invalid_argument("enumerate_lower needs level >= 2");
  const int r = level_count(lam.level - 1);
  std::vector<Partition> out;
  std::vector<int> cur(r);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == r) {
      out.push_back(Partition{cur, lam.level - 1});
      return;
    }
    const int lo = (i + 1 < lam.count()) ? lam.parts[i + 1] : 0;
    for (int v = lo; v <= lam.parts[i]; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Partition> enumerate_band(const Partition& mu, int width) {
  const auto sh = mu.shifted_all();
  const int r = mu.count();
  std::vector<Partition> out;
  std::vector<int> cur(r);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == r) {
      out.push_back(from_shifted(mu.level, cur));
      return;
    }
    for (int d = -width; d <= width; ++d) {
      int v = sh[i] + d;
      if (v < 0 || (i && v >= cur[i - 1])) continue;
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

bool interlaces(const Partition& lower, const Partition& upper) {
  if (upper.level != lower.level + 1) throw std::invalid_argument("interlaces: levels must differ by one");
  for (int i = 0; i < lower.count(); ++i) {
    const int next = (i + 1 < upper.count()) ? upper.parts[i + 1] : 0;
    if (lower.parts[i] > upper.parts[i] || lower.parts[i] < next) return false;
  }
  return true;
}

int interlace_determinant(const Partition& lower, const Partition& upper) {
  if (upper.level != lower.level + 1) throw std::invalid_argument("interlace_determinant: level mismatch");
  const int R = upper.count();
  const bool strict = !is_odd(lower.level);
  Eigen::MatrixXd m(R, R);
  for (int i = 0; i < R; ++i) {
    const int li = i < lower.count() ? lower.shifted(i) : -1;
    for (int j = 0; j < R; ++j) {
      const int uj = upper.shifted(j);
      m(i, j) = (strict ? li < uj : li <= uj) ? 1.0 : 0.0;
    }
  }
  return static_cast<int>(std::lround(det_of(m)));
}

namespace {

using DimKey = std::tuple<double, double, int, std::vector<int>>;

std::map<DimKey, double>& dim_table() {
  static std::map<DimKey, double> table;
  return table;
}

std::shared_mutex& dim_mutex() {
  static std::shared_mutex m;
  return m;
}

double phi_product(const Params& p, const Partition& mu) {
  double prod = 1.0;
  for (int k = 0; k < mu.count(); ++k) prod *= scalings(p, mu.level, mu.shifted(k)).phi;
  return prod;
}

}  // namespace

double dim_at_one(const Params& p, const Partition& lam) {
  if (lam.level == 1) return 1.0;
  DimKey key{p.alpha, p.beta, lam.level, lam.parts};
  {
    std::shared_lock lock(dim_mutex());
    auto it = dim_table().find(key);
    if (it != dim_table().end()) return it->second;
  }
  double total = 0.0;
  for (const auto& mu : enumerate_lower(lam)) total += phi_product(p, mu) * dim_at_one(p, mu);
  std::unique_lock lock(dim_mutex());
  dim_table().emplace(std::move(key), total);
  return total;
}

double cotransition(const Params& p, const Partition& lam, const Partition& mu) {
  if (lam.level < 2 || mu.level != lam.level - 1) throw std::invalid_argument("cotransition: level mismatch");
  if (!interlaces(mu, lam)) return 0.0;
  return phi_product(p, mu) * dim_at_one(p, mu) / dim_at_one(p, lam);
}

double cotransition_det_form(const Params& p, const Partition& lam, const Partition& mu) {
  if (lam.level < 2 || mu.level != lam.level - 1) throw std::invalid_argument("cotransition: level mismatch");
  const int R = lam.count();
  Eigen::MatrixXd m(R, R);
  for (int i = 0; i < R; ++i) {
    const int mi = i < mu.count() ? mu.shifted(i) : -1;
    for (int j = 0; j < R; ++j) m(i, j) = phi_indicator(p, mu.level, mi, lam.shifted(j));
  }
  return det_of(m) * dim_at_one(p, mu) / dim_at_one(p, lam);
}

double PsiSpec::operator()(double x) const {
  switch (kind) {
    case Kind::exponential:
      return std::exp(param * (x - 1.0));
    case Kind::linear:
      return 1.0 + param * (x - 1.0);
    default:
      return 1.0;
  }
}

double PsiSpec::derivative_at_one(int k) const {
  if (k < 0) throw std::domain_error("derivative order must be nonnegative");
  switch (kind) {
    case Kind::exponential:
      return std::pow(param, k);
    case Kind::linear:
      return k == 0 ? 1.0 : (k == 1 ? param : 0.0);
    default:
      return k == 0 ? 1.0 : 0.0;
  }
}

double taylor_remainder_quotient(const PsiSpec& spec, int m, double x) {
  if (m <= 0) return spec(x);
  switch (spec.kind) {
    case PsiSpec::Kind::linear:
      return m == 1 ? spec.param : 0.0;
    case PsiSpec::Kind::constant_one:
      return 0.0;
    default:
      break;
  }
  const double g = spec.param;
  if (g == 0.0) return 0.0;
  // integral form g^m/(m-1)! int_0^1 (1-t)^{m-1} e^{g (x-1) t} dt has a positive integrand
  const double z = g * (x - 1.0);
  const int npts = 16 + 8 * static_cast<int>(std::ceil(std::fabs(z) / 8.0));
  auto rule = cached_gauss_jacobi_rule(m - 1.0, 0.0, npts);
  double acc = 0.0;
  for (int i = 0; i < npts; ++i) acc += rule->weights[i] * std::exp(z * 0.5 * (1.0 + rule->nodes[i]));
  const double sign = (g < 0.0 && (m % 2)) ? -1.0 : 1.0;
  return sign * acc * std::exp(m * std::log(std::fabs(g)) - log_gamma(m) - m * std::numbers::ln2);
}

double taylor_remainder(const PsiSpec& spec, int m, double x) {
  if (m <= 0) return spec(x);
  return taylor_remainder_quotient(spec, m, x) * std::pow(x - 1.0, m);
}

namespace {

// sum_{k >= max(0, -j)} E^{(k)}(1)/k! int (x-1)^{k+j} P_s w dx, using
// int (x-1)^q P_s w dx = (-1)^{q+s} 2^{a+b+q+1} C(q,s) Gamma(a+q+1) Gamma(b+s+1) / Gamma(a+b+q+s+2) for q >= s
double psi_moment_series(const PsiSpec& spec, double a, double b, int j, int s) {
  const int k0 = std::max({0, -j, s - j});
  const int q0 = k0 + j;
  const double log_m0 = (a + b + q0 + 1.0) * std::log(2.0) + std::lgamma(q0 + 1.0) - std::lgamma(s + 1.0) -
                        std::lgamma(q0 - s + 1.0) + std::lgamma(a + q0 + 1.0) + std::lgamma(b + s + 1.0) -
                        std::lgamma(a + b + q0 + s + 2.0);
  const double sign0 = ((q0 + s) % 2 == 0) ? 1.0 : -1.0;
  // moment ratio and 1/k! are carried in quad precision; the alternating sum cancels by up to e^{4 gamma}
  __float128 moment = 1, inv_fact = 1, sum = 0, peak = 0;
  for (int k = 1; k <= k0; ++k) inv_fact /= k;
  const bool finite_taylor = spec.kind != PsiSpec::Kind::exponential;
  for (int k = k0; k < k0 + 4000; ++k) {
    const int q = k + j;
    __float128 coef = inv_fact;
    if (spec.kind == PsiSpec::Kind::exponential) {
      for (int i = 0; i < k; ++i) coef *= static_cast<__float128>(spec.param);
    } else {
      coef *= static_cast<__float128>(spec.derivative_at_one(k));
    }
    const __float128 term = coef * moment;
    sum += term;
    const __float128 mag = term < 0 ? -term : term;
    if (mag > peak) peak = mag;
    if (finite_taylor && k >= 1) break;
    if (k > k0 + 4 && mag <= peak * 1e-36Q) break;
    if (spec.kind == PsiSpec::Kind::exponential && spec.param == 0.0) break;
    const __float128 qq = q, aa = a, bb = b;
    moment *= -2 * (qq + 1) / (qq + 1 - s) * (aa + qq + 1) / (aa + bb + qq + s + 2);
    inv_fact /= (k + 1);
  }
  return sign0 * std::exp(log_m0) * static_cast<double>(sum);
}

}  // namespace

std::vector<double> psi_values(const Params& p, const PsiSpec& spec, int n, int l, int smax) {
  if (smax < 0) throw std::domain_error("psi_values: smax must be nonnegative");
  const double la = level_alpha(p, n);
  const int j = level_count(n) - l;
  std::vector<double> out(smax + 1);
  for (int s = 0; s <= smax; ++s)
    out[s] = psi_moment_series(spec, la, p.beta, j, s) * scalings(p, n, s).c_bar / p.norm_const;
  return out;
}

std::vector<double> psi_values_quadrature(const Params& p, const PsiSpec& spec, int n, int l, int smax) {
  if (smax < 0) throw std::domain_error("psi_values: smax must be nonnegative");
  const double la = level_alpha(p, n);
  const int r = level_count(n);
  const int j = r - l;
  int npts = smax + std::max(j, 0) + 30;
  if (spec.kind == PsiSpec::Kind::exponential) npts += 2 * static_cast<int>(std::ceil(std::fabs(spec.param)));
  auto rule = cached_gauss_jacobi_rule(la, p.beta, npts);
  std::vector<double> out(smax + 1, 0.0);
  for (int i = 0; i < npts; ++i) {
    const double x = rule->nodes[i];
    const double g = (j >= 0) ? std::pow(x - 1.0, j) * spec(x) : taylor_remainder_quotient(spec, -j, x);
    const auto P = jacobi_eval_all(p, la, smax, x);
    const double wg = rule->weights[i] * g;
    for (int s = 0; s <= smax; ++s) out[s] += wg * P[s];
  }
  for (int s = 0; s <= smax; ++s) out[s] *= scalings(p, n, s).c_bar / p.norm_const;
  return out;
}

double psi_fn(const Params& p, const PsiSpec& spec, int n, int l, int s) {
  if (s < 0) throw std::domain_error("psi_fn: s must be nonnegative");
  return psi_values(p, spec, n, l, s)[s];
}

double measure_weight(const Params& p, const PsiSpec& spec, const Partition& lam) {
  const int r = lam.count();
  const auto sh = lam.shifted_all();
  const int smax = sh.front();
  Eigen::MatrixXd m(r, r);
  for (int i = 1; i <= r; ++i) {
    const auto vals = psi_values(p, spec, lam.level, i, smax);
    for (int jj = 0; jj < r; ++jj) m(i - 1, jj) = vals[sh[jj]];
  }
  return det_of(m) * dim_at_one(p, lam);
}

namespace {

// coefficients of psi(x) Pbar_k in the Pbar basis on [k - deg, k + deg]
std::vector<double> expand_product(const Params& p, int n, const std::vector<double>& coeffs, int k) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  const int base = k - deg;
  const int width = 2 * deg + 1;
  std::vector<double> power(width, 0.0), out(width, 0.0), next(width);
  power[k - base] = 1.0;
  for (int d = 0; d <= deg; ++d) {
    if (d > 0) {
      std::fill(next.begin(), next.end(), 0.0);
      for (int idx = 0; idx < width; ++idx) {
        if (power[idx] == 0.0) continue;
        const int q = idx + base;
        const auto rc = scaled_recurrence(p, n, q);
        next[idx] += (rc.a - 1.0) * power[idx];
        if (q >= 1) next[idx - 1] += rc.b * power[idx];
        next[idx + 1] += rc.c * power[idx];
      }
      power.swap(next);
    }
    for (int idx = 0; idx < width; ++idx) out[idx] += coeffs[d] * power[idx];
  }
  return out;
}

}  // namespace

double transition_entry(const Params& p, const std::vector<double>& psi_coeffs, const Partition& mu,
                        const Partition& lam) {
  check_same_level(mu, lam);
  if (psi_coeffs.empty()) throw std::invalid_argument("transition_entry: empty psi");
  const int n = mu.level, r = mu.count();
  const int deg = static_cast<int>(psi_coeffs.size()) - 1;
  for (int i = 0; i < r; ++i)
    if (std::abs(mu.shifted(i) - lam.shifted(i)) > deg) return 0.0;
  Eigen::MatrixXd m(r, r);
  for (int j = 0; j < r; ++j) {
    const int k = lam.shifted(j);
    const auto col = expand_product(p, n, psi_coeffs, k);
    for (int i = 0; i < r; ++i) {
      const int idx = mu.shifted(i) - (k - deg);
      m(i, j) = (idx >= 0 && idx <= 2 * deg) ? col[idx] : 0.0;
    }
  }
  return det_of(m) * dim_at_one(p, lam) / dim_at_one(p, mu);
}

double single_level_transition(const Params& p, int n, double a, const Partition& mu, const Partition& lam) {
  if (mu.level != n) throw std::invalid_argument("single_level_transition: level mismatch");
  return transition_entry(p, {1.0, a}, mu, lam);
}

double stochastic_bound(const Params& p, Parity parity) {
  const double a = p.alpha, b = p.beta, s = a + b;
  double t0, t1;
  if (parity == Parity::odd) {
    t0 = (4 * a * a * a + a * a * (8 * b + 9) + 4 * a * (b * b + 3 * b + 1) + b * (3 * b + 4)) /
         (s * (s + 1) * (s + 2));
    t1 = (4 * a * a * a + 8 * (2 * a * a + 3 * a * (b + 1)) + a * a * (8 * b + 9) + (4 * a + 8) * (b * b + 3 * b + 1) +
          24 * (s + 1) + b * (3 * b + 4) + 16) /
         ((s + 2) * (s + 3) * (s + 4));
  } else {
    t0 = (4 * a * a * a + a * a * (8 * b + 21) + a * (4 * b * b + 28 * b + 34) + 7 * b * b + 24 * b + 17) /
         ((s + 1) * (s + 2) * (s + 3));
    t1 = (4 * a * a * a + a * a * (8 * b + 37) + a * (4 * b * b + 52 * b + 114) + 15 * b * b + 96 * b + 129) /
         ((s + 3) * (s + 4) * (s + 5));
  }
  double out = 2.0;
  for (double t : {t0, t1})
    if (std::isfinite(t)) out = std::min(out, t);
  return out;
}

double stochastic_bound_sufficient(const Params& p, Parity parity) {
  const int n = parity == Parity::odd ? 1 : 2;
  const double la = level_alpha(p, n);
  double sup = 2.0;
  for (int k = 0; k <= 4000; ++k) {
    const double right = scaled_recurrence(p, n, k + 1).b;
    const double left = k >= 1 ? scaled_recurrence(p, n, k - 1).c : 0.0;
    sup = std::max(sup, right + left - recurrence_coeffs(p, la, k).a + 1.0);
  }
  return sup;
}

EnumerationReport enumerate_transition(const Params& p, int n, double a, int max_part) {
  EnumerationReport rep{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (const auto& mu : enumerate_partitions(n, max_part)) {
    double sum = 0.0;
    for (const auto& lam : enumerate_band(mu, 1)) {
      const double v = single_level_transition(p, n, a, mu, lam);
      rep.min_entry = std::min(rep.min_entry, v);
      sum += v;
    }
    rep.max_row_sum_error = std::max(rep.max_row_sum_error, std::fabs(sum - 1.0));
    ++rep.rows;
  }
  return rep;
}

double intertwining_discrepancy(const Params& p, int n, double a, int cutoff) {
  if (n < 1) throw std::invalid_argument("intertwining_discrepancy: level must be positive");
  double worst = 0.0;
  const auto lams = enumerate_partitions(n, cutoff);
  for (const auto& mu : enumerate_partitions(n + 1, cutoff)) {
    const auto lowers = enumerate_lower(mu);
    const auto band = enumerate_band(mu, 1);
    for (const auto& lam : lams) {
      double lhs = 0.0, rhs = 0.0;
      for (const auto& z : lowers) {
        const double c = cotransition(p, mu, z);
        if (c != 0.0) lhs += c * single_level_transition(p, n, a, z, lam);
      }
      for (const auto& nu : band) {
        const double t = single_level_transition(p, n + 1, a, mu, nu);
        if (t != 0.0) rhs += t * cotransition(p, nu, lam);
      }
      worst = std::max(worst, std::fabs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace jgl
