#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "jgl/quad.hpp"

using namespace jgl;

TEST_CASE("small Gauss rules") {
  auto r1 = gauss_jacobi_rule(0, 0, 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));
  auto r2 = gauss_jacobi_rule(0, 0, 2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
  for (int n : {3, 7, 20, 64}) {
    auto rc = gauss_jacobi_rule(-0.5, -0.5, n);
    for (int i = 0; i < n; ++i) {
      CHECK(rc.weights[i] == doctest::Approx(std::numbers::pi / n).epsilon(1e-12));
      CHECK(rc.nodes[i] == doctest::Approx(-std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n))).epsilon(1e-12));
    }
  }
  CHECK_THROWS(gauss_jacobi_rule(-1.0, 0.0, 3));
}

TEST_CASE("rule invariants") {
  for (auto [a, b] : {std::pair{-0.9, -0.95}, {0.3, -0.4}, {2.0, 2.0}, {1.5, -0.5}, {-0.5, 0.5}}) {
    for (int n : {1, 2, 5, 30, 200}) {
      auto r = gauss_jacobi_rule(a, b, n);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        CHECK(r.weights[i] > 0.0);
        CHECK(r.nodes[i] > -1.0);
        CHECK(r.nodes[i] < 1.0);
        if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
        sum += r.weights[i];
      }
      CHECK(sum == doctest::Approx(jacobi_weight_mass(a, b)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exactness on random polynomials via Jacobi expansion") {
  // q = sum_k c_k P_k^{(a,b)}: the weighted integral is c_0 times the mass
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto [a, b] : {std::pair{0.3, -0.4}, {-0.7, 1.2}, {2.0, 2.0}}) {
    auto p = make_params(a, b);
    for (int n : {3, 8, 21}) {
      auto r = gauss_jacobi_rule(a, b, n);
      std::vector<double> c(2 * n);
      for (auto& v : c) v = U(rng);
      double quad = 0.0;
      for (int i = 0; i < n; ++i) {
        auto P = jacobi_eval_all(p, a, 2 * n - 1, r.nodes[i]);
        double q = 0.0;
        for (int k = 0; k < 2 * n; ++k) q += c[k] * P[k];
        quad += r.weights[i] * q;
      }
      double exact = c[0] * jacobi_weight_mass(a, b);
      CHECK(std::fabs(quad - exact) <= 1e-11 * std::max(1.0, std::fabs(exact)));
    }
  }
}

TEST_CASE("inner products") {
  auto r = gauss_jacobi_rule(0, 0, 5);
  CHECK(inner_product(r, [](double) { return 1.0; }, [](double) { return 1.0; }) == doctest::Approx(2.0));
  auto p = make_params(0.3, -0.4);
  auto rr = gauss_jacobi_rule(0.3, -0.4, 12);
  auto pt = [&](int k) { return [&p, k](double x) { return ptilde(p, 0.3, k, x); }; };
  CHECK(std::fabs(inner_product(rr, pt(3), pt(5))) < 1e-10);
  for (int k = 0; k < 10; ++k) CHECK(inner_product(rr, pt(k), pt(k)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cached rules are shared") {
  auto a = cached_gauss_jacobi_rule(0.5, 0.25, 17);
  auto b = cached_gauss_jacobi_rule(0.5, 0.25, 17);
  CHECK(a.get() == b.get());
}

TEST_CASE("contour integral examples") {
  ContourSpec spec{0.0, 1.5, 64};
  auto v = contour_integral(spec, [](cplx u) { return 1.0 / (u - 0.3); });
  CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);
  auto w = contour_integral(spec, [](cplx u) { return u * u; });
  CHECK(std::abs(w) < 1e-12);
  auto z = contour_integral(spec, [](cplx u) { return std::exp(-u) / ((1.0 - u) * (1.0 - u)); });
  CHECK(std::abs(z - cplx(-std::exp(-1.0), 0.0)) < 1e-10);
  CHECK_THROWS_AS(contour_integral(ContourSpec{0.0, 0.9, 64}, [](cplx u) { return u; }), std::domain_error);
  CHECK_THROWS_AS(contour_integral(ContourSpec{0.0, 1.5, 48}, [](cplx u) { return u; }), std::domain_error);
  // a pole just outside the circle makes the trapezoid rule converge too slowly for a tiny cap
  CHECK_THROWS_AS(contour_integral(spec, [](cplx u) { return 1.0 / (u - 1.5001); }, 1e-10, 256), NonConvergence);
}

namespace {
cplx u_integrand(const Params& p, double gamma, int t, int m, int r, double x, cplx u) {
  const double la = level_alpha(p, m);
  auto tay = jacobi_taylor_at_one(p, la, t);
  cplx P = 0.0;
  for (int j = t; j >= 0; --j) P = P * (u - 1.0) + tay[j];
  P *= scalings(p, m, t).c_barbar;
  return std::exp(-u * gamma) * P / (std::pow(1.0 - u, r) * (x - u));
}
}  // namespace

TEST_CASE("residue oracle hand values") {
  auto p = make_params(0.3, -0.4);
  CHECK(std::fabs(residue_u_oracle(p, 0.0, 0, 1, 1, 0.0)) < 1e-15);
  // the residues at u = x and u = 1 are -2 and +2
  CHECK(std::fabs(residue_u_oracle(p, 0.0, 0, 1, 1, 0.5)) < 1e-15);
  CHECK(std::fabs(residue_u_two_poles(p, 0.0, 0, 1, 1, 0.5)) < 1e-15);
  ContourSpec spec{0.0, 1.5, 64};
  auto c = contour_integral(spec, [&](cplx u) { return u_integrand(p, 0.0, 0, 1, 1, 0.5, u); });
  CHECK(std::abs(c) < 1e-10);
}

TEST_CASE("residue oracle equals the contour integral") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> G(0.0, 5.0), X(-0.98, 0.98);
  std::uniform_int_distribution<int> T(0, 8), R(1, 6), M(1, 2);
  auto p = make_params(0.3, -0.4);
  for (int rep = 0; rep < 100; ++rep) {
    double gamma = G(rng), x = X(rng);
    int t = T(rng), r = R(rng), m = M(rng);
    double oracle = residue_u_oracle(p, gamma, t, m, r, x);
    // a tighter circle keeps e^{-u gamma} and the polynomial small on the far side, so the rounding floor of
    // the trapezoid sum stays below the tolerance
    ContourSpec spec{0.0, 1.2, 64};
    auto c = contour_integral(spec, [&](cplx u) { return u_integrand(p, gamma, t, m, r, x, u); });
    INFO("gamma=" << gamma << " t=" << t << " r=" << r << " m=" << m << " x=" << x << " oracle=" << oracle);
    CHECK(std::fabs(c.real() - oracle) <= 1e-9 * std::max(1.0, std::fabs(oracle)));
    CHECK(std::fabs(c.imag()) <= 1e-9 * std::max(1.0, std::fabs(oracle)));
    CHECK(std::fabs(residue_u_two_poles(p, gamma, t, m, r, x) - oracle) <= 1e-8 * std::max(1.0, std::fabs(oracle)));
  }
}

TEST_CASE("contour radius independence") {
  auto p = make_params(-0.5, 0.5);
  for (double x : {-0.9, 0.0, 0.7})
    for (int r : {1, 3}) {
      auto f = [&](cplx u) { return u_integrand(p, 2.0, 4, 2, r, x, u); };
      auto a = contour_integral({0.0, 1.25, 64}, f);
      auto b = contour_integral({0.0, 1.75, 64}, f);
      CHECK(std::abs(a - b) < 1e-9);
    }
}
