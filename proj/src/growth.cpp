#include "jgl/growth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace jgl {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t st = seed;
  std::uint64_t h = splitmix64(st);
  for (std::uint64_t v : {a, b, c}) {
    std::uint64_t t = h ^ v;
    h = splitmix64(t);
  }
  return Rng(h);
}

std::uint64_t Rng::next() {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

double jump_rate(const Params& p, int n, int lam, Direction dir) {
  if (lam < 0) throw std::invalid_argument("jump_rate: negative position");
  if (dir == Direction::right) return scaled_recurrence(p, n, lam + 1).b;
  if (lam == 0) return 0.0;
  return scaled_recurrence(p, n, lam - 1).c;
}

double max_jump_rate(const Params& p) {
  double m = 0.5;
  for (int n : {1, 2})
    for (int lam = 0; lam <= 4096; ++lam)
      m = std::max({m, jump_rate(p, n, lam, Direction::right), jump_rate(p, n, lam, Direction::left)});
  return m * (1.0 + 1e-9);
}

GTPattern init_packed(int levels) {
  if (levels < 1) throw std::invalid_argument("init_packed: levels must be positive");
  GTPattern g;
  g.positions.resize(levels);
  for (int n = 1; n <= levels; ++n) {
    const int r = level_count(n);
    for (int k = 1; k <= r; ++k) g.positions[n - 1].push_back(r - k);
  }
  return g;
}

bool levels_interlace(const GTPattern& g, int n) {
  const auto& lo = g.positions[n - 1];
  const auto& up = g.positions[n];
  const int r = level_count(n), ru = level_count(n + 1);
  for (int k = 1; k <= r; ++k) {
    const int x = lo[k - 1];
    if (is_odd(n)) {
      if (x > up[k - 1]) return false;
      if (k + 1 <= ru && !(up[k] < x)) return false;
    } else {
      if (!(x < up[k - 1])) return false;
      if (k + 1 <= ru && up[k] > x) return false;
    }
  }
  return true;
}

bool is_valid(const GTPattern& g) {
  for (int n = 1; n <= g.levels(); ++n) {
    const auto& lv = g.positions[n - 1];
    if (static_cast<int>(lv.size()) != level_count(n)) return false;
    for (std::size_t k = 0; k < lv.size(); ++k) {
      if (lv[k] < 0) return false;
      if (k > 0 && lv[k] >= lv[k - 1]) return false;
    }
  }
  for (int n = 1; n < g.levels(); ++n)
    if (!levels_interlace(g, n)) return false;
  return true;
}

JumpEvent apply_move(GTPattern& g, int n, int k, Direction dir) {
  JumpEvent ev;
  ev.level = n;
  ev.index = k;
  ev.direction = dir;
  const int levels = g.levels();
  auto& P = g.positions;
  if (dir == Direction::right) {
    const int x = P[n - 1][k - 1];
    if (n >= 2 && k >= 2 && k - 1 <= level_count(n - 1) && P[n - 2][k - 2] - x == (is_odd(n) ? 0 : 1)) {
      ev.blocked = true;
      return ev;
    }
    int old = x;
    P[n - 1][k - 1] = x + 1;
    for (int m = n; m + 1 <= levels; ++m) {
      int& up = P[m][k - 1];
      if (up - old != level_count(m + 1) - level_count(m)) break;
      old = up;
      ++up;
      ++ev.pushed_chain_length;
    }
    return ev;
  }
  const int x = P[n - 1][k - 1];
  if (x == 0 || (n >= 2 && k <= level_count(n - 1) &&
                 x - P[n - 2][k - 1] == level_count(n) - level_count(n - 1))) {
    ev.blocked = true;
    return ev;
  }
  int old = x;
  P[n - 1][k - 1] = x - 1;
  for (int m = n, j = k; m + 1 <= levels && j + 1 <= level_count(m + 1); ++m, ++j) {
    int& up = P[m][j];
    if (old - up != (is_odd(m) ? 1 : 0)) break;
    old = up;
    --up;
    ++ev.pushed_chain_length;
  }
  return ev;
}

namespace {

void check_local(const GTPattern& g, const JumpEvent& ev) {
  if (ev.blocked) return;
  const int lo = std::max(1, ev.level - 1);
  const int hi = std::min(g.levels() - 1, ev.level + ev.pushed_chain_length);
  for (int n = lo; n <= hi; ++n)
    if (!levels_interlace(g, n)) throw std::logic_error("growth: interlacing violated after a move");
  for (int n = ev.level; n <= ev.level + ev.pushed_chain_length; ++n)
    for (int v : g.positions[n - 1])
      if (v < 0) throw std::logic_error("growth: negative position after a move");
}

struct ClockLayout {
  std::vector<int> offset;  // offset[n-1] = index of particle (n, 1)
  int particles = 0;
  explicit ClockLayout(int levels) {
    for (int n = 1; n <= levels; ++n) {
      offset.push_back(particles);
      particles += level_count(n);
    }
  }
  int id(int n, int k, Direction d) const { return 2 * (offset[n - 1] + k - 1) + (d == Direction::right ? 1 : 0); }
};

// Fenwick tree over clock rates for O(log) selection
class RateTree {
 public:
  explicit RateTree(int size) : tree_(size + 1, 0.0), values_(size, 0.0) {}
  void set(int i, double v) {
    const double delta = v - values_[i];
    values_[i] = v;
    for (int j = i + 1; j < static_cast<int>(tree_.size()); j += j & -j) tree_[j] += delta;
  }
  void rebuild() {
    std::fill(tree_.begin(), tree_.end(), 0.0);
    for (int i = 0; i < static_cast<int>(values_.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(tree_.size()); j += j & -j) tree_[j] += values_[i];
  }
  double total() const {
    double s = 0.0;
    for (int j = static_cast<int>(tree_.size()) - 1; j > 0; j -= j & -j) s += tree_[j];
    return s;
  }
  // smallest i with prefix sum through i exceeding target
  int find(double target) const {
    int pos = 0;
    int step = 1;
    while (step * 2 < static_cast<int>(tree_.size())) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < static_cast<int>(tree_.size()) && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    // skip zero-rate clocks that rounding could land on
    int i = std::min(pos, static_cast<int>(values_.size()) - 1);
    while (values_[i] <= 0.0 && i + 1 < static_cast<int>(values_.size())) ++i;
    while (values_[i] <= 0.0 && i > 0) --i;
    return i;
  }
  double value(int i) const { return values_[i]; }

 private:
  std::vector<double> tree_;
  std::vector<double> values_;
};

struct ClockRef {
  int n, k;
  Direction d;
};

ClockRef clock_of(const ClockLayout& lay, int id) {
  const int particle = id / 2;
  const Direction d = (id % 2) ? Direction::right : Direction::left;
  const int n = static_cast<int>(std::upper_bound(lay.offset.begin(), lay.offset.end(), particle) - lay.offset.begin());
  return {n, particle - lay.offset[n - 1] + 1, d};
}

void refresh_particle(const Params& p, const GTPattern& g, const ClockLayout& lay, RateTree& tree, int n, int k) {
  const int x = g.at(n, k);
  tree.set(lay.id(n, k, Direction::left), jump_rate(p, n, x, Direction::left));
  tree.set(lay.id(n, k, Direction::right), jump_rate(p, n, x, Direction::right));
}

void refresh_after(const Params& p, const GTPattern& g, const ClockLayout& lay, RateTree& tree, const JumpEvent& ev) {
  if (ev.blocked) return;
  int k = ev.index;
  for (int m = ev.level; m <= ev.level + ev.pushed_chain_length; ++m) {
    refresh_particle(p, g, lay, tree, m, k);
    if (ev.direction == Direction::left) ++k;
  }
}

GTPattern simulate_total_rate(const Params& p, int levels, double gamma, std::uint64_t seed,
                              const SimulationOptions& opts) {
  GTPattern g = init_packed(levels);
  ClockLayout lay(levels);
  RateTree tree(2 * lay.particles);
  for (int n = 1; n <= levels; ++n)
    for (int k = 1; k <= level_count(n); ++k) refresh_particle(p, g, lay, tree, n, k);
  Rng rng(seed);
  double now = 0.0;
  long events = 0;
  while (true) {
    const double total = tree.total();
    now += rng.exponential(total);
    if (now >= gamma) break;
    const auto c = clock_of(lay, tree.find(rng.uniform() * total));
    JumpEvent ev = apply_move(g, c.n, c.k, c.d);
    ev.time = now;
    check_local(g, ev);
    if (opts.check_every_step && !is_valid(g)) throw std::logic_error("growth: invalid state");
    refresh_after(p, g, lay, tree, ev);
    if (opts.log) opts.log->push_back(ev);
    if (++events % 4096 == 0) tree.rebuild();
  }
  return g;
}

GTPattern simulate_per_clock(const Params& p, int levels, double gamma, std::uint64_t seed,
                             const SimulationOptions& opts) {
  GTPattern g = init_packed(levels);
  ClockLayout lay(levels);
  const double bound = max_jump_rate(p);
  std::vector<Rng> streams;
  streams.reserve(2 * lay.particles);
  for (int id = 0; id < 2 * lay.particles; ++id) {
    const auto c = clock_of(lay, id);
    streams.push_back(Rng::stream(seed, c.n, c.k, c.d == Direction::right ? 1 : 0));
  }
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (int id = 0; id < 2 * lay.particles; ++id) queue.emplace(streams[id].exponential(bound), id);
  while (!queue.empty()) {
    auto [t, id] = queue.top();
    if (t >= gamma) break;
    queue.pop();
    auto& rng = streams[id];
    const auto c = clock_of(lay, id);
    const double rate = jump_rate(p, c.n, g.at(c.n, c.k), c.d);
    if (rate > bound) throw std::logic_error("growth: thinning bound exceeded");
    if (rng.uniform() * bound < rate) {
      JumpEvent ev = apply_move(g, c.n, c.k, c.d);
      ev.time = t;
      check_local(g, ev);
      if (opts.check_every_step && !is_valid(g)) throw std::logic_error("growth: invalid state");
      if (opts.log) opts.log->push_back(ev);
    }
    queue.emplace(t + rng.exponential(bound), id);
  }
  return g;
}

}  // namespace

StepResult step(const Params& p, const GTPattern& state, Rng& rng, double now) {
  std::vector<double> rates;
  std::vector<ClockRef> refs;
  double total = 0.0;
  for (int n = 1; n <= state.levels(); ++n)
    for (int k = 1; k <= level_count(n); ++k)
      for (Direction d : {Direction::left, Direction::right}) {
        const double r = jump_rate(p, n, state.at(n, k), d);
        if (r <= 0.0) continue;
        rates.push_back(r);
        refs.push_back({n, k, d});
        total += r;
      }
  StepResult out{state, {}};
  const double dt = rng.exponential(total);
  double target = rng.uniform() * total;
  std::size_t i = 0;
  while (i + 1 < rates.size() && target >= rates[i]) target -= rates[i++];
  out.event = apply_move(out.state, refs[i].n, refs[i].k, refs[i].d);
  out.event.time = now + dt;
  check_local(out.state, out.event);
  return out;
}

GTPattern simulate(const Params& p, int levels, double gamma, std::uint64_t seed, const SimulationOptions& opts) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("simulate: gamma must be nonnegative");
  if (opts.scheduler == Scheduler::per_clock) return simulate_per_clock(p, levels, gamma, seed, opts);
  return simulate_total_rate(p, levels, gamma, seed, opts);
}

void write_snapshot(std::ostream& os, const GTPattern& g) {
  for (const auto& lv : g.positions) {
    for (std::size_t k = 0; k < lv.size(); ++k) os << (k ? " " : "") << lv[k];
    os << '\n';
  }
}

GTPattern read_snapshot(std::istream& is) {
  GTPattern g;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<int> lv;
    int v;
    while (ls >> v) lv.push_back(v);
    if (!ls.eof()) throw std::invalid_argument("read_snapshot: malformed line: " + line);
    g.positions.push_back(std::move(lv));
  }
  if (g.positions.empty() || !is_valid(g)) throw std::invalid_argument("read_snapshot: not a valid pattern");
  return g;
}

std::string snapshot_string(const GTPattern& g) {
  std::ostringstream os;
  write_snapshot(os, g);
  return os.str();
}

}  // namespace jgl
