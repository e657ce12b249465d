#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "jgl/quad.hpp"
#include "jgl/specialfn.hpp"

using namespace jgl;

namespace {
const std::pair<double, double> kPairs[] = {{-0.5, -0.5}, {-0.5, 0.5}, {0.3, -0.4}, {2.0, 2.0}, {0.5, 1.0}, {-0.9, 3.0}};
}

TEST_CASE("params and level alpha") {
  auto p = make_params(0.3, -0.4);
  CHECK(p.norm_const == doctest::Approx(std::pow(2.0, 0.9) * std::tgamma(1.3)).epsilon(1e-15));
  CHECK(level_alpha(p, 1) == 0.3);
  CHECK(level_alpha(p, 2) == doctest::Approx(1.3));
  CHECK(level_count(1) == 1);
  CHECK(level_count(2) == 1);
  CHECK(level_count(5) == 3);
  CHECK_THROWS(make_params(-1.0, 0.0));
}

TEST_CASE("log_gamma") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
  // factorials and half-integers on [0.5, 200]
  double lf = 0.0;
  for (int k = 1; k < 200; ++k) {
    CHECK(std::fabs(log_gamma(k + 1.0) - (lf += std::log(static_cast<double>(k)))) <= 1e-13 * std::max(1.0, lf));
  }
  double lh = 0.5 * std::log(std::numbers::pi);
  for (int k = 0; k < 199; ++k) {
    CHECK(std::fabs(log_gamma(k + 0.5) - lh) <= 1e-13 * std::max(1.0, std::fabs(lh)));
    lh += std::log(k + 0.5);
  }
  CHECK_THROWS(log_gamma(0.0));
}

TEST_CASE("recurrence coefficient examples") {
  auto p = make_params(-0.5, -0.5);
  CHECK(recurrence_coeffs(p, -0.5, 0).c == doctest::Approx(2.0));
  CHECK(recurrence_coeffs(p, -0.5, 0).b == 0.0);
  auto q = make_params(0.0, 0.0);
  auto rc = recurrence_coeffs(q, 0.0, 1);
  CHECK(rc.b == doctest::Approx(1.0 / 3.0));
  CHECK(rc.c == doctest::Approx(2.0 / 3.0));
  auto s = make_params(1.7, 1.7);
  for (int k = 0; k < 20; ++k) CHECK(recurrence_coeffs(s, 1.7, k).a == 0.0);
  for (auto [a, b] : kPairs) {
    auto pp = make_params(a, b);
    auto far = recurrence_coeffs(pp, a, 100000);
    CHECK(std::fabs(far.a) < 1e-8);
    CHECK(far.b == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(far.c == doctest::Approx(0.5).epsilon(1e-4));
    for (int k = 1; k < 50; ++k) {
      CHECK(recurrence_coeffs(pp, a, k).b > 0.0);
      CHECK(recurrence_coeffs(pp, a, k).c > 0.0);
    }
  }
}

TEST_CASE("Chebyshev degenerations") {
  // symmetrized recurrence x p_k = A_k p_k + s_k p_{k-1} + s_{k+1} p_{k+1} with s_k = sqrt(B_k C_{k-1})
  for (auto [a, b] : {std::pair{0.5, -0.5}, {-0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}) {
    auto p = make_params(a, b);
    for (int k = 1; k < 60; ++k) {
      auto rc = recurrence_coeffs(p, a, k);
      double sk = std::sqrt(rc.b * recurrence_coeffs(p, a, k - 1).c);
      CHECK(std::fabs(rc.a) < 1e-14);
      // T_0 carries the usual factor sqrt(2) in the first kind
      double expect = (k == 1 && a == -0.5 && b == -0.5) ? std::sqrt(0.5) : 0.5;
      CHECK(std::fabs(sk - expect) < 1e-14);
    }
  }
  // in the Pbar basis the off-diagonal terms are jump rates; (alpha, beta) = (-1/2, +-1/2) gives 1/2 on both parities
  for (auto [a, b] : {std::pair{-0.5, -0.5}, {-0.5, 0.5}})
    for (int n : {1, 2}) {
      auto p = make_params(a, b);
      for (int k = 1; k < 60; ++k) {
        auto rc = scaled_recurrence(p, n, k);
        double wall = (k == 1 && n == 1) ? 2.0 * (a + 1.0) / (a + b + 2.0) : 0.5;
        CHECK(std::fabs(rc.a) < 1e-14);
        CHECK(std::fabs(rc.b - wall) < 1e-14);
        CHECK(std::fabs(rc.c - 0.5) < 1e-14);
      }
    }
}

TEST_CASE("rescaled recurrence reproduces P-bar") {
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (int n : {1, 2})
      for (int k = 1; k < 30; ++k) {
        auto rc = scaled_recurrence(p, n, k);
        for (double x : {-0.7, 0.1, 0.95}) {
          double lhs = x * pbar(p, n, k, x);
          double rhs = rc.a * pbar(p, n, k, x) + rc.b * pbar(p, n, k - 1, x) + rc.c * pbar(p, n, k + 1, x);
          CHECK(std::fabs(lhs - rhs) <= 1e-11 * std::max(1.0, std::fabs(pbar(p, n, k + 1, x))));
        }
      }
  }
}

TEST_CASE("jacobi_eval values") {
  auto q = make_params(0.0, 0.0);
  CHECK(jacobi_eval(q, 0.0, 0, 0.37) == 1.0);
  CHECK(jacobi_eval(q, 0.0, 2, 0.0) == doctest::Approx(-0.5));
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (double la : {a, a + 1.0})
      for (int k = 0; k < 40; ++k)
        CHECK(jacobi_eval(p, la, k, 1.0) ==
              doctest::Approx(std::exp(std::lgamma(k + la + 1) - std::lgamma(k + 1.0) - std::lgamma(la + 1))).epsilon(1e-11));
  }
}

TEST_CASE("Taylor coefficients at one reproduce the polynomial") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (int k = 0; k < 25; ++k) {
      auto c = jacobi_taylor_at_one(p, a, k);
      double x = U(rng), acc = 0.0, mag = 0.0;
      for (int j = k; j >= 0; --j) {
        acc = acc * (x - 1.0) + c[j];
        mag = mag * std::fabs(x - 1.0) + std::fabs(c[j]);
      }
      double ref = jacobi_eval(p, a, k, x);
      CHECK(std::fabs(acc - ref) <= 1e-13 * mag);
    }
  }
}

TEST_CASE("norms") {
  auto q = make_params(0.0, 0.0);
  CHECK(jacobi_norm_sq(q, 0.0, 0) == doctest::Approx(2.0));
  CHECK(jacobi_norm_sq(q, 0.0, 1) == doctest::Approx(2.0 / 3.0));
  auto c = make_params(-0.5, -0.5);
  CHECK(jacobi_norm_sq(c, -0.5, 0) == doctest::Approx(std::numbers::pi));
  // alpha' + beta = -1 at k = 0 is the removable case; Chebyshev closed form for k >= 1
  for (int k = 1; k < 20; ++k) {
    double lead = std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0)) / std::sqrt(std::numbers::pi);
    CHECK(jacobi_norm_sq(c, -0.5, k) == doctest::Approx(lead * lead * std::numbers::pi / 2.0).epsilon(1e-13));
  }
}

TEST_CASE("orthonormality by quadrature") {
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (double la : {a, a + 1.0}) {
      auto rule = gauss_jacobi_rule(la, b, 40);
      double worst = 0.0;
      for (int k = 0; k <= 30; ++k)
        for (int l = 0; l <= 30; ++l) {
          double v = inner_product(rule, [&](double x) { return ptilde(p, la, k, x); },
                                   [&](double x) { return ptilde(p, la, l, x); });
          worst = std::max(worst, std::fabs(v - (k == l ? 1.0 : 0.0)));
        }
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("recurrence residual") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (int rep = 0; rep < 10; ++rep) {
      double x = U(rng);
      auto P = jacobi_eval_all(p, a, 51, x);
      for (int k = 0; k <= 50; ++k) {
        auto rc = recurrence_coeffs(p, a, k);
        double res = x * P[k] - (rc.a * P[k] + rc.b * (k ? P[k - 1] : 0.0) + rc.c * P[k + 1]);
        CHECK(std::fabs(res) <= 1e-10 * std::max(1.0, std::fabs(P[k + 1])));
      }
    }
  }
}

TEST_CASE("leading coefficient equals product of inverse C") {
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    double prod = 1.0;
    for (int k = 0; k <= 30; ++k) {
      CHECK(jacobi_leading_coef(p, a, k) == doctest::Approx(prod).epsilon(1e-10));
      prod /= recurrence_coeffs(p, a, k).c;
    }
  }
}

TEST_CASE("scalings") {
  auto c = make_params(-0.5, -0.5);
  // (a+b+2) Gamma(1) Gamma(a+1) Gamma(b+1) / (2 Gamma(a+2) Gamma(a+b+2)) at a = b = -1/2 is sqrt(pi)
  CHECK(scalings(c, 2, 0).phi == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  auto z = make_params(0.0, 0.0);
  CHECK(scalings(z, 1, 0).c_bar == doctest::Approx(1.0));
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (int k = 0; k < 30; ++k) {
      CHECK(pbarbar(p, 1, k, 1.0) == doctest::Approx(1.0).epsilon(1e-11));
      auto sc = scalings(p, 2, k);
      CHECK(sc.phi == doctest::Approx(sc.c_bar / sc.c_barbar).epsilon(1e-13));
    }
    for (int n : {1, 2})
      for (int k = 0; k < 25; ++k)
        for (double x : {-0.93, -0.2, 0.41, 0.88}) {
          double la = level_alpha(p, n);
          double lhs = pbar(p, n, k, x) * pbarbar(p, n, k, x) / p.norm_const;
          double rhs = ptilde(p, la, k, x) * ptilde(p, la, k, x);
          CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(std::fabs(rhs), 1e-300) + 1e-300);
        }
  }
}

TEST_CASE("phi_indicator") {
  auto p = make_params(0.3, -0.4);
  CHECK(phi_indicator(p, 3, -1, 0) == 1.0);
  CHECK(phi_indicator(p, 2, 4, 4) == 0.0);
  CHECK(phi_indicator(p, 3, 4, 4) == doctest::Approx(scalings(p, 3, 4).phi));
  CHECK(phi_indicator(p, 2, 3, 4) == doctest::Approx(scalings(p, 2, 3).phi));
}

TEST_CASE("Bessel functions against the standard library") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(0.7, 0.0) == 0.0);
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  for (double nu : {0.0, 0.3, 0.5, 0.7, 1.0, 2.0, 3.5}) {
    double worst_j = 0.0, worst_i = 0.0;
    for (double x = 0.01; x <= 50.0; x += 0.0731) {
      worst_j = std::max(worst_j, std::fabs(bessel_j(nu, x) - std::cyl_bessel_j(nu, x)));
      double ri = std::cyl_bessel_i(nu, x);
      worst_i = std::max(worst_i, std::fabs(bessel_i(nu, x) - ri) / std::max(1.0, ri));
    }
    CHECK(worst_j <= 1e-10);
    CHECK(worst_i <= 1e-10);
  }
  // negative orders: closed form at -1/2 and the three-term relation J_{v-1} = (2v/x) J_v - J_{v+1}
  double worst = 0.0;
  for (double x = 0.05; x <= 50.0; x += 0.0731) {
    worst = std::max(worst, std::fabs(bessel_j(-0.5, x) - std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x)));
    double ref = 1.4 / x * std::cyl_bessel_j(0.7, x) - std::cyl_bessel_j(1.7, x);
    worst = std::max(worst, std::fabs(bessel_j(-0.3, x) - ref));
    double iref = std::sqrt(2.0 / (std::numbers::pi * x)) * std::cosh(x);
    CHECK(std::fabs(bessel_i(-0.5, x) - iref) <= 1e-10 * std::max(1.0, iref));
  }
  CHECK(worst <= 1e-10);
  CHECK_THROWS(bessel_j(0.5, -1.0));
  CHECK_THROWS(bessel_i(0.5, -1.0));
}

TEST_CASE("Bessel branches agree on the overlap window") {
  for (double nu : {-0.5, -0.3, 0.0, 0.5, 0.7, 2.0}) {
    for (double x = 20.0; x <= 30.0; x += 0.25) {
      CHECK(std::fabs(bessel_j_series(nu, x) - bessel_j_asymptotic(nu, x)) <= 1e-10);
      double iv = bessel_i_series(nu, x);
      CHECK(std::fabs(iv - bessel_i_asymptotic(nu, x)) <= 1e-10 * iv);
    }
  }
}
