#include "jgl/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "jgl/kernels.hpp"
#include "jgl/measures.hpp"
#include "jgl/quad.hpp"

namespace jgl {

namespace {

CheckResult timed(const std::string& name, double tolerance, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double quad_sum(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}


std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == ';')) s.pop_back();
  return s;
}

}  // namespace

const ParamPairs& standard_pairs() {
  static const ParamPairs pairs{{-0.5, -0.5}, {-0.5, 0.5}, {0.3, -0.4}, {2.0, 2.0}};
  return pairs;
}

CheckResult check_orthonormality(const ParamPairs& pairs, int kmax) {
  return timed("orthonormality", 1e-9, [&](CheckResult& r) {
    double worst = 0.0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (double la : {a, a + 1.0}) {
        const auto rule = cached_gauss_jacobi_rule(la, b, kmax + 10);
        for (int k = 0; k <= kmax; ++k)
          for (int l = k; l <= kmax; ++l) {
            const double v = quad_sum(*rule, [&](double x) { return ptilde(p, la, k, x) * ptilde(p, la, l, x); });
            worst = std::max(worst, std::fabs(v - (k == l ? 1.0 : 0.0)));
          }
      }
    }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_recurrence(const ParamPairs& pairs, int kmax) {
  return timed("recurrence", 1e-10, [&](CheckResult& r) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> X(-1.0, 1.0);
    double worst = 0.0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (double la : {a, a + 1.0})
        for (int rep = 0; rep < 20; ++rep) {
          const double x = X(gen);
          const auto P = jacobi_eval_all(p, la, kmax + 1, x);
          for (int k = 0; k <= kmax; ++k) {
            const auto rc = recurrence_coeffs(p, la, k);
            const double prev = k > 0 ? P[k - 1] : 0.0;
            const double res = x * P[k] - (rc.a * P[k] + rc.b * prev + rc.c * P[k + 1]);
            worst = std::max(worst, std::fabs(res) / std::max(1.0, std::fabs(P[k + 1])));
          }
        }
    }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_identities(const ParamPairs& pairs, int smax) {
  return timed("summation identities", 1e-9, [&](CheckResult& r) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> X(-1.0, 1.0);
    double worst_point = 0.0, worst_limit = 0.0, worst_tail = 0.0;
    auto T = [](double x) { return std::exp(0.7 * x) * std::cos(1.3 * x); };
    const double T1 = T(1.0);
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (int rep = 0; rep < 20; ++rep) {
        const double x = X(gen);
        double odd = 0.0, even = 0.0;
        for (int s = 0; s <= smax; ++s) {
          odd += pbar(p, 1, s, x);
          const double rhs1 = pbarbar(p, 2, s, x);
          worst_point = std::max(worst_point, std::fabs(odd - rhs1) / (1.0 + std::fabs(rhs1)));
          if (s >= 1 && std::fabs(x - 1.0) > 1e-3) {
            even += pbar(p, 2, s - 1, x);
            const double rhs2 = (pbarbar(p, 1, s, x) - 1.0) / (x - 1.0);
            worst_point = std::max(worst_point, std::fabs(even - rhs2) / (1.0 + std::fabs(rhs2)));
          }
        }
      }
      double at_one = 0.0;
      for (int s = 1; s <= smax; ++s) {
        at_one += pbar(p, 2, s - 1, 1.0);
        const double d = pbarbar_taylor(p, 1, s)[1];
        worst_limit = std::max(worst_limit, std::fabs(at_one - d) / (1.0 + std::fabs(d)));
      }
      // tail sums of <Pbar_r, T> against the smooth test function T
      const int npts = 160, rcap = 120;
      const auto ra = cached_gauss_jacobi_rule(a, b, npts);
      const auto rb = cached_gauss_jacobi_rule(a + 1.0, b, npts);
      std::vector<double> ca(rcap + 1), cb(rcap + 1);
      for (int k = 0; k <= rcap; ++k) {
        ca[k] = quad_sum(*ra, [&](double x) { return pbar(p, 1, k, x) * T(x); });
        cb[k] = quad_sum(*rb, [&](double x) { return pbar(p, 2, k, x) * T(x); });
      }
      for (int s = 0; s <= smax; ++s) {
        double tail_a = 0.0, tail_b = 0.0;
        for (int k = rcap; k > s; --k) tail_a += ca[k];
        for (int k = rcap; k >= s; --k) tail_b += cb[k];
        const double rhs_a = quad_sum(*ra, [&](double x) { return pbarbar(p, 2, s, x) * (T1 - T(x)); });
        const double rhs_b = quad_sum(*ra, [&](double x) { return pbarbar(p, 1, s, x) * T(x); });
        worst_tail = std::max(worst_tail, std::fabs(tail_a - rhs_a) / (1.0 + std::fabs(rhs_a)));
        worst_tail = std::max(worst_tail, std::fabs(tail_b - rhs_b) / (1.0 + std::fabs(rhs_b)));
      }
    }
    r.metric = std::max({worst_point, worst_limit, worst_tail});
    r.detail = "pointwise " + fmt(worst_point) + ", at x=1 " + fmt(worst_limit) + ", tail sums " + fmt(worst_tail);
    r.passed = r.metric < r.tolerance;
  });
}

CheckResult check_composition(const ParamPairs& pairs, double gamma, int nmax, int smax) {
  return timed("composition rule", 1e-9, [&](CheckResult& r) {
    const int cap = 150;
    double worst = 0.0;
    int truncation = 0;
    const PsiSpec spec = PsiSpec::exponential(gamma);
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (int n = 2; n <= nmax; ++n) {
        const int rn = level_count(n);
        for (int l = rn - 2; l <= rn; ++l) {
          const auto upper = psi_values(p, spec, n, l, cap);
          const auto lower = psi_values(p, spec, n - 1, l, smax);
          for (int s = 0; s <= smax; ++s) {
            double acc = 0.0;
            int last = cap;
            for (int t = 0; t <= cap; ++t) {
              const double term = phi_indicator(p, n - 1, s, t) * upper[t];
              acc += term;
              if (t > s + 5 && std::fabs(term) < 1e-14) {
                last = t;
                break;
              }
            }
            truncation = std::max(truncation, last);
            worst = std::max(worst, std::fabs(acc - lower[s]));
          }
        }
      }
    }
    r.metric = worst;
    r.detail = "largest truncation index " + std::to_string(truncation);
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_biorthogonality(const ParamPairs& pairs, int nmax) {
  return timed("biorthogonality", 1e-9, [&](CheckResult& r) {
    const int cap = 150;
    double worst = 0.0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (double gamma : {0.5, 2.0}) {
        const PsiSpec spec = PsiSpec::exponential(gamma);
        for (int n = 1; n <= nmax; ++n) {
          const int rn = level_count(n);
          for (int k = 1; k <= rn; ++k) {
            const auto psi = psi_values(p, spec, n, k, cap);
            for (int l = 1; l <= rn; ++l) {
              double acc = 0.0;
              for (int s = 0; s <= cap; ++s) {
                const double term = psi[s] * biorthogonal_phi(p, gamma, n, l, s);
                acc += term;
                if (s > 20 && std::fabs(term) < 1e-17) break;
              }
              worst = std::max(worst, std::fabs(acc - (k == l ? 1.0 : 0.0)));
            }
          }
        }
      }
    }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_cotransition(const ParamPairs& pairs, int nmax, int max_part) {
  return timed("cotransition stochasticity", 1e-10, [&](CheckResult& r) {
    double worst = 0.0, min_entry = 0.0;
    int rows = 0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (int n = 2; n <= nmax; ++n)
        for (const auto& lam : enumerate_partitions(n, max_part)) {
          double sum = 0.0;
          for (const auto& mu : enumerate_lower(lam)) {
            const double v = cotransition(p, lam, mu);
            min_entry = std::min(min_entry, v);
            sum += v;
          }
          worst = std::max(worst, std::fabs(sum - 1.0));
          ++rows;
        }
    }
    r.metric = worst;
    r.detail = std::to_string(rows) + " rows, smallest entry " + fmt(min_entry);
    r.passed = worst < r.tolerance && min_entry >= 0.0;
  });
}

CheckResult check_single_level(const ParamPairs& pairs, double fraction, int nmax, int max_part) {
  return timed("single-level operator", 1e-10, [&](CheckResult& r) {
    double min_entry = 0.0, row_err = 0.0, semigroup = 0.0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (int n = 1; n <= nmax; ++n) {
        const double bound = stochastic_bound(p, is_odd(n) ? Parity::odd : Parity::even);
        const double a1 = fraction / bound, a2 = 0.5 / bound;
        const auto rep = enumerate_transition(p, n, a1, max_part);
        min_entry = std::min(min_entry, rep.min_entry);
        row_err = std::max(row_err, rep.max_row_sum_error);
        const std::vector<double> prod{1.0, a1 + a2, a1 * a2};
        for (const auto& mu : enumerate_partitions(n, 4))
          for (const auto& nu : enumerate_band(mu, 2)) {
            double lhs = 0.0;
            for (const auto& lam : enumerate_band(mu, 1))
              lhs += single_level_transition(p, n, a1, mu, lam) * single_level_transition(p, n, a2, lam, nu);
            semigroup = std::max(semigroup, std::fabs(lhs - transition_entry(p, prod, mu, nu)));
          }
      }
    }
    r.metric = row_err;
    r.detail = "smallest entry " + fmt(min_entry) + ", semigroup " + fmt(semigroup);
    r.passed = min_entry >= -1e-12 && row_err < 1e-10 && semigroup < 1e-9;
  });
}

CheckResult check_intertwining(const std::vector<std::pair<std::pair<double, double>, double>>& pairs_with_a,
                               int nmax, int cutoff) {
  return timed("intertwining", 1e-10, [&](CheckResult& r) {
    double worst = 0.0;
    for (const auto& [ab, a] : pairs_with_a) {
      const Params p = make_params(ab.first, ab.second);
      for (int n = 1; n <= nmax; ++n) worst = std::max(worst, intertwining_discrepancy(p, n, a, cutoff));
    }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_packed(const ParamPairs& pairs) {
  return timed("gamma = 0 packed configuration", 1e-8, [&](CheckResult& r) {
    double worst = 0.0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (int n = 1; n <= 5; ++n)
        for (int s = 0; s <= 6; ++s) {
          const double expected = s < level_count(n) ? 1.0 : 0.0;
          worst = std::max(worst, std::fabs(correlation(p, 0.0, {{s, n}}).raw - expected));
        }
      for (int n = 1; n <= 4; ++n)
        for (int m = n; m <= 4; ++m)
          for (int s = 0; s <= 3; ++s)
            for (int t = 0; t <= 3; ++t) {
              if (n == m && s >= t) continue;
              const double expected = (s < level_count(n) && t < level_count(m)) ? 1.0 : 0.0;
              worst = std::max(worst, std::fabs(correlation(p, 0.0, {{s, n}, {t, m}}).raw - expected));
            }
    }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_contour_residue(const ParamPairs& pairs, int samples, unsigned long long seed) {
  return timed("contour vs residue", 1e-8, [&](CheckResult& r) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> gam(0.0, 5.0);
    std::uniform_int_distribution<int> lev(1, 5), pos(0, 10);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    KernelOptions contour;
    contour.method = UIntegral::contour;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const auto [a, b] = pairs[pick(gen)];
      const Params p = make_params(a, b);
      const double g = gam(gen);
      const SitePoint x{pos(gen), lev(gen)}, y{pos(gen), lev(gen)};
      const double res = kernel_K(p, g, x, y);
      const double con = kernel_K(p, g, x, y, contour);
      worst = std::max(worst, std::fabs(res - con) / std::max(1.0, std::fabs(res)));
    }
    r.metric = worst;
    r.detail = std::to_string(samples) + " random entries";
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_complement(const ParamPairs& pairs) {
  return timed("complement kernel", 1e-9, [&](CheckResult& r) {
    double worst = 0.0;
    for (auto [a, b] : pairs) {
      const Params p = make_params(a, b);
      for (double gamma : {0.7, 3.0})
        for (int n = 1; n <= 4; ++n)
          for (int m = 1; m <= 4; ++m)
            for (int s = 0; s <= 4; s += 2)
              for (int t = 0; t <= 4; t += 2) {
                const double k = kernel_K(p, gamma, {s, n}, {t, m});
                const double delta = (s == t && n == m) ? 1.0 : 0.0;
                const double sign = ((level_count(n) - level_count(m)) % 2 == 0) ? 1.0 : -1.0;
                const double expected = n == m ? delta - k : -sign * k;
                worst = std::max(worst, std::fabs(kernel_complement(p, gamma, {s, n}, {t, m}) - expected));
              }
    }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

CheckResult check_mehler_heine() {
  return timed("Mehler-Heine", 0.05, [&](CheckResult& r) {
    const Params p = make_params(0.3, -0.4);
    const auto small = mehler_heine_pair(p, 1.0, 1.0, 1e3);
    const auto large = mehler_heine_pair(p, 1.0, 1.0, 1e5);
    const double e_small = std::fabs(small.lhs - small.rhs), e_large = std::fabs(large.lhs - large.rhs);
    r.metric = e_large;
    r.detail = "error at N=1e3 " + fmt(e_small) + ", at N=1e5 " + fmt(e_large);
    r.passed = std::isfinite(e_large) && e_large < r.tolerance && e_large < e_small;
  });
}

CheckResult check_discrete_jacobi_edge() {
  return timed("discrete Jacobi edge limit", 0.0, [&](CheckResult& r) {
    const Params p = make_params(0.3, -0.4);
    const double tau = 1.0;
    bool decreasing = true;
    double last = 0.0;
    std::ostringstream detail;
    for (double eta : {1.0, 0.5}) {
      const double eps = 1.0 - eta / tau;
      double previous = INFINITY;
      detail << "eta=" << eta << ":";
      for (int N : {20, 40, 80}) {
        const int rr = static_cast<int>(std::lround(N * eta));
        const SitePoint site{0, 2 * rr - 1};
        const double err = std::fabs(kernel_K(p, N * tau, site, site) - discrete_jacobi_limit(p, site, site, eps));
        detail << " " << fmt(err);
        if (!(err < previous)) decreasing = false;
        previous = err;
      }
      last = std::max(last, previous);
      detail << "; ";
    }
    r.metric = last;
    r.detail = trimmed(detail.str());
    r.passed = decreasing;
  });
}

CheckResult check_hard_edge(const std::vector<double>& betas, const std::vector<double>& sizes) {
  return timed("hard-edge limit", 1.2, [&](CheckResult& r) {
    struct Pt {
      double sigma, nu;
    };
    std::vector<std::vector<Pt>> one, two;
    for (double s : {-0.5, 0.0, 0.5})
      for (double n : {0.8, 1.2, 1.6}) one.push_back({{s, n}});
    two = {{{0.0, 1.0}, {0.6, 1.6}}, {{-0.4, 1.2}, {-0.4, 2.0}}, {{0.3, 0.8}, {-0.3, 1.4}},
           {{0.0, 0.8}, {0.0, 1.6}},  {{-0.5, 1.0}, {0.5, 1.0}},  {{0.4, 1.2}, {-0.2, 2.0}}};
    bool ok = true;
    double worst_ratio = 0.0;
    std::ostringstream detail;
    for (double beta : betas) {
      const Params p = make_params(0.3, beta);
      for (int k = 1; k <= 2; ++k) {
        const auto& sets = k == 1 ? one : two;
        std::vector<double> errs;
        for (double N : sizes) {
          double mx = 0.0;
          for (const auto& set : sets) {
            std::vector<SitePoint> pts;
            for (const auto& q : set) pts.push_back(hard_edge_site(N, q.sigma, q.nu));
            mx = std::max(mx, hard_edge_compare(p, N, pts).error);
          }
          errs.push_back(mx);
        }
        detail << "beta=" << beta << " k=" << k << ":";
        for (double e : errs) detail << " " << fmt(e);
        detail << "; ";
        for (std::size_t i = 1; i < errs.size(); ++i) {
          worst_ratio = std::max(worst_ratio, errs[i] / errs[i - 1]);
          if (!(errs[i] <= 1.2 * errs[i - 1])) ok = false;
        }
        if (!(errs.back() < errs.front())) ok = false;
      }
    }
    r.metric = worst_ratio;
    r.detail = trimmed(detail.str());
    r.passed = ok;
  });
}

CheckResult check_pearcey_single_time() {
  return timed("Pearcey single-time identity", 1e-7, [&](CheckResult& r) {
    double worst = 0.0;
    for (double beta : {-0.5, 0.5, 0.7})
      for (double gap : {0.5, 1.0, 2.0})
        for (double nu : {0.5, 1.0})
          for (double ratio : {1.0, 1.3}) {
            const PearceyArgs g{beta, 0.2 + gap, nu, 0.2, ratio * nu};
            const double closed = pearcey_single_time(g);
            const double integral = pearcey_single_time_integral(g);
            worst = std::max(worst, std::fabs(closed - integral) / std::max(1e-300, std::fabs(closed)));
          }
    r.metric = worst;
    r.passed = worst < r.tolerance;
  });
}

}  // namespace jgl
