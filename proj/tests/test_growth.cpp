#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "doctest.h"
#include "jgl/growth.hpp"
#include "jgl/measures.hpp"

using namespace jgl;

namespace {

// the rate table written out by parity and direction
double rate_table(double a, double b, int n, int lam, Direction dir) {
  const double s = a + b;
  if (dir == Direction::right) {
    if (!is_odd(n)) return (lam + b + 1) / (2 * lam + s + 2) * 2 * (lam + 1) / (2 * lam + s + 3);
    return (lam + s + 1) / (2 * lam + s + 1) * 2 * (lam + a + 1) / (2 * lam + s + 2);
  }
  if (lam == 0) return 0.0;
  if (!is_odd(n)) return (lam + s + 1) / (2 * lam + s + 1) * 2 * (lam + a + 1) / (2 * lam + s + 2);
  return (lam + b) / (2 * lam + s) * 2 * lam / (2 * lam + s + 1);
}

const std::vector<std::pair<double, double>> kPairs = {{-0.5, -0.5}, {-0.5, 0.5}, {0.5, -0.5}, {0.5, 0.5},
                                                       {0.3, -0.4}, {2.0, 2.0},   {-0.9, 1.7}, {1.5, -0.8}};

GTPattern from_levels(std::vector<std::vector<int>> lv) { return GTPattern{std::move(lv)}; }

// every valid pattern with `levels` levels and positions <= cap
std::vector<GTPattern> all_patterns(int levels, int cap) {
  std::vector<GTPattern> out;
  GTPattern g;
  std::function<void(int)> rec = [&](int n) {
    if (n > levels) {
      out.push_back(g);
      return;
    }
    const int r = level_count(n);
    std::vector<int> cur(r);
    std::function<void(int, int)> fill = [&](int k, int below) {
      if (k == r) {
        g.positions.push_back(cur);
        if (n == 1 || levels_interlace(g, n - 1)) rec(n + 1);
        g.positions.pop_back();
        return;
      }
      for (int v = below; v <= cap; ++v) {
        cur[r - 1 - k] = v;
        fill(k + 1, v + 1);
      }
    };
    fill(0, 0);
  };
  rec(1);
  return out;
}

}  // namespace

TEST_CASE("generator is deterministic and uniform") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  Rng s1 = Rng::stream(7, 1, 2, 3), s2 = Rng::stream(7, 1, 2, 3), s3 = Rng::stream(7, 1, 3, 2);
  CHECK(s1.next() == s2.next());
  CHECK(s1.next() != s3.next());
  Rng u(1);
  double sum = 0.0, esum = 0.0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
    esum += u.exponential(2.0);
  }
  CHECK(std::fabs(sum / N - 0.5) < 5 * std::sqrt(1.0 / 12 / N));
  CHECK(std::fabs(esum / N - 0.5) < 5 * 0.5 / std::sqrt(N));
}

TEST_CASE("jump rates match the rate table") {
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    for (int n : {1, 2, 3, 4})
      for (int lam = 0; lam <= 60; ++lam)
        for (Direction d : {Direction::left, Direction::right}) {
          const double s = a + b;
          // removable singularities of the table at s = -1 (odd right at 0) and s = 0 (odd left at 1)
          if (is_odd(n) && d == Direction::right && lam == 0 && std::fabs(s + 1) < 1e-15) continue;
          const double got = jump_rate(p, n, lam, d);
          const double want = rate_table(a, b, n, lam, d);
          INFO("a=" << a << " b=" << b << " n=" << n << " lam=" << lam);
          CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
          CHECK(got >= 0.0);
        }
    // the two compact forms agree
    for (int n : {1, 2})
      for (int lam = 0; lam <= 40; ++lam) {
        const double la = level_alpha(p, n);
        const double cbb0 = scalings(p, n, lam).c_barbar, cbb1 = scalings(p, n, lam + 1).c_barbar;
        const double alt_right = cbb0 / cbb1 * recurrence_coeffs(p, la, lam).c;
        CHECK(std::fabs(jump_rate(p, n, lam, Direction::right) - alt_right) <= 1e-12);
        if (lam >= 1) {
          const double cbbm = scalings(p, n, lam - 1).c_barbar;
          const double alt_left = cbb0 / cbbm * recurrence_coeffs(p, la, lam).b;
          CHECK(std::fabs(jump_rate(p, n, lam, Direction::left) - alt_left) <= 1e-12);
        }
      }
  }
}

TEST_CASE("rate examples and degenerations") {
  auto orth = make_params(-0.5, -0.5);
  for (int n : {1, 2, 3, 6})
    for (int lam = 1; lam < 30; ++lam) {
      CHECK(jump_rate(orth, n, lam, Direction::left) == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(jump_rate(orth, n, lam, Direction::right) == doctest::Approx(0.5).epsilon(1e-14));
    }
  CHECK(jump_rate(orth, 1, 0, Direction::right) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jump_rate(orth, 2, 0, Direction::right) == doctest::Approx(0.5).epsilon(1e-14));
  auto symp = make_params(-0.5, 0.5);
  CHECK(jump_rate(symp, 3, 0, Direction::right) == doctest::Approx(0.5).epsilon(1e-14));
  for (auto [a, b] : kPairs) {
    auto p = make_params(a, b);
    CHECK(jump_rate(p, 1, 0, Direction::right) == doctest::Approx(2 * (a + 1) / (a + b + 2)).epsilon(1e-13));
    for (int n : {1, 2}) {
      CHECK(jump_rate(p, n, 0, Direction::left) == 0.0);
      CHECK(std::fabs(jump_rate(p, n, 200000, Direction::right) - 0.5) < 1e-4);
      CHECK(std::fabs(jump_rate(p, n, 200000, Direction::left) - 0.5) < 1e-4);
    }
    CHECK(max_jump_rate(p) >= jump_rate(p, 1, 0, Direction::right));
  }
}

TEST_CASE("packed initial condition") {
  CHECK(init_packed(1).positions == std::vector<std::vector<int>>{{0}});
  auto g3 = init_packed(3);
  CHECK(g3.at(2, 1) == 0);
  CHECK(g3.at(3, 1) == 1);
  CHECK(g3.at(3, 2) == 0);
  for (int L = 1; L <= 40; ++L) {
    auto g = init_packed(L);
    CHECK(is_valid(g));
    for (int n = 1; n <= L; ++n)
      for (int k = 1; k <= level_count(n); ++k) CHECK(g.at(n, k) == level_count(n) - k);
  }
  CHECK_THROWS(init_packed(0));
}

TEST_CASE("single particle step") {
  auto p = make_params(-0.5, -0.5);
  Rng rng(5);
  auto res = step(p, init_packed(1), rng, 0.0);
  CHECK(res.state.positions == std::vector<std::vector<int>>{{1}});
  CHECK(res.event.direction == Direction::right);
  CHECK_FALSE(res.event.blocked);
  CHECK(res.event.pushed_chain_length == 0);
  CHECK(res.event.time > 0.0);
  // the holding time at 0 is exponential with rate 1
  double sum = 0.0;
  const int N = 100000;
  for (int i = 0; i < N; ++i) sum += step(p, init_packed(1), rng, 0.0).event.time;
  CHECK(std::fabs(sum / N - 1.0) < 5.0 / std::sqrt(N));
}

TEST_CASE("block on an odd level") {
  // x^3_2 = 1 = x^2_1 so the right move of x^3_2 is blocked
  auto g = from_levels({{1}, {1}, {2, 1}});
  REQUIRE(is_valid(g));
  auto before = g;
  auto ev = apply_move(g, 3, 2, Direction::right);
  CHECK(ev.blocked);
  CHECK(ev.pushed_chain_length == 0);
  CHECK(g == before);
  // the even-level analogue blocks one site earlier
  auto h = from_levels({{0}, {0}, {2, 0}, {2, 1}});
  REQUIRE(is_valid(h));
  auto ev2 = apply_move(h, 4, 2, Direction::right);
  CHECK(ev2.blocked);
}

TEST_CASE("replay of the illustrated sequence") {
  auto g = init_packed(5);
  auto ev1 = apply_move(g, 2, 1, Direction::right);
  CHECK_FALSE(ev1.blocked);
  CHECK(ev1.pushed_chain_length == 3);
  CHECK(g == from_levels({{0}, {1}, {2, 0}, {2, 0}, {3, 1, 0}}));
  auto ev2 = apply_move(g, 5, 2, Direction::right);
  CHECK_FALSE(ev2.blocked);
  CHECK(ev2.pushed_chain_length == 0);
  CHECK(g == from_levels({{0}, {1}, {2, 0}, {2, 0}, {3, 2, 0}}));
  // x^3_1 = x^4_1 would be pushed by its own right move, so the left attempt of x^4_1 is suppressed
  auto snapshot = g;
  auto ev3 = apply_move(g, 4, 1, Direction::left);
  CHECK(ev3.blocked);
  CHECK(g == snapshot);
  // the wall particle has no left clock at 0
  auto ev4 = apply_move(g, 1, 1, Direction::left);
  CHECK(ev4.blocked);
  CHECK(jump_rate(make_params(0.3, -0.4), 1, 0, Direction::left) == 0.0);
}

TEST_CASE("exhaustive move resolution on small patterns") {
  long checked = 0;
  for (int L : {2, 3, 4, 5}) {
    for (const auto& g0 : all_patterns(L, 4)) {
      for (int n = 1; n <= L; ++n)
        for (int k = 1; k <= level_count(n); ++k)
          for (Direction d : {Direction::left, Direction::right}) {
            auto g = g0;
            auto ev = apply_move(g, n, k, d);
            const int step = d == Direction::right ? 1 : -1;
            if (ev.blocked) {
              CHECK(g == g0);
              // moving only this particle breaks interlacing or leaves Z>=0
              auto alone = g0;
              alone.positions[n - 1][k - 1] += step;
              bool bad = alone.positions[n - 1][k - 1] < 0 || (n >= 2 && !levels_interlace(alone, n - 1));
              CHECK(bad);
              continue;
            }
            CHECK(is_valid(g));
            // the chain is minimal: stopping one particle early breaks interlacing
            for (int c = 0; c < ev.pushed_chain_length + 1; ++c) {
              auto part = g0;
              int kk = k;
              for (int m = n; m <= n + c; ++m) {
                part.positions[m - 1][kk - 1] += step;
                if (d == Direction::left) ++kk;
              }
              if (c < ev.pushed_chain_length) CHECK_FALSE(is_valid(part));
              else CHECK(part == g);
            }
            // pushed pairs stay aligned after the move
            int kk = k;
            for (int m = n; m < n + ev.pushed_chain_length; ++m) {
              if (d == Direction::right)
                CHECK(g.at(m + 1, kk) - g.at(m, kk) == level_count(m + 1) - level_count(m));
              else
                CHECK(g.at(m, kk) - g.at(m + 1, kk + 1) == (is_odd(m) ? 1 : 0));
              if (d == Direction::left) ++kk;
            }
            ++checked;
          }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("simulation basics") {
  auto p = make_params(0.3, -0.4);
  CHECK(simulate(p, 6, 0.0, 1) == init_packed(6));
  SimulationOptions opts;
  opts.check_every_step = true;
  for (auto sch : {Scheduler::total_rate, Scheduler::per_clock}) {
    opts.scheduler = sch;
    auto a = simulate(p, 12, 5.0, 99, opts);
    auto b = simulate(p, 12, 5.0, 99, opts);
    CHECK(a == b);
    CHECK(is_valid(a));
    CHECK_FALSE(a == init_packed(12));
  }
  CHECK_THROWS(simulate(p, 3, -1.0, 1));
}

TEST_CASE("snapshot round trip") {
  auto p = make_params(2.0, 2.0);
  auto g = simulate(p, 9, 3.0, 7);
  auto text = snapshot_string(g);
  std::istringstream is(text);
  CHECK(read_snapshot(is) == g);
  CHECK(snapshot_string(init_packed(3)) == "0\n0\n1 0\n");
  std::istringstream bad("1\n0\n");
  CHECK_THROWS(read_snapshot(bad));
  std::istringstream junk("0\nx\n");
  CHECK_THROWS(read_snapshot(junk));
}

TEST_CASE("lower levels do not see higher levels under the per-clock scheduler") {
  auto p = make_params(-0.5, 0.5);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    std::vector<JumpEvent> small, large;
    SimulationOptions o1{Scheduler::per_clock, true, &small}, o2{Scheduler::per_clock, true, &large};
    const int L = 6;
    auto a = simulate(p, L, 8.0, seed, o1);
    auto b = simulate(p, L + 2, 8.0, seed, o2);
    for (int n = 1; n <= L; ++n) CHECK(a.positions[n - 1] == b.positions[n - 1]);
    auto strip = [&](const std::vector<JumpEvent>& v) {
      std::vector<std::tuple<double, int, int, int, bool>> out;
      for (const auto& e : v)
        if (e.level <= L) out.emplace_back(e.time, e.level, e.index, static_cast<int>(e.direction), e.blocked);
      return out;
    };
    CHECK(strip(small) == strip(large));
    CHECK(small.size() > 20);
  }
}

TEST_CASE("fixed-time law of the two lowest levels") {
  // P(level 2 = lam, level 1 = mu) = measure_weight(lam) * cotransition(lam, mu)
  const double gamma = 1.0;
  auto p = make_params(0.3, -0.4);
  const int N = 100000;
  for (auto sch : {Scheduler::total_rate, Scheduler::per_clock}) {
    std::map<std::pair<int, int>, int> counts;
    for (int i = 0; i < N; ++i) {
      auto g = simulate(p, 2, gamma, 1000 + i, {sch});
      counts[{g.at(2, 1), g.at(1, 1)}]++;
    }
    double worst = 0.0;
    for (int l2 = 0; l2 <= 5; ++l2)
      for (int l1 = 0; l1 <= l2; ++l1) {
        auto lam = make_partition(2, {l2});
        auto mu = make_partition(1, {l1});
        const double prob = measure_weight(p, PsiSpec::exponential(gamma), lam) * cotransition(p, lam, mu);
        const double emp = counts[{l2, l1}] / static_cast<double>(N);
        const double se = std::sqrt(std::max(prob * (1 - prob), 1e-12) / N);
        worst = std::max(worst, std::fabs(emp - prob) / se);
      }
    CHECK(worst < 4.5);
  }
}
