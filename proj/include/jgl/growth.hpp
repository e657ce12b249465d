#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jgl/specialfn.hpp"

namespace jgl {

// xoshiro256** seeded through splitmix64
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  // independent stream derived from (seed, a, b, c)
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);
  std::uint64_t next();
  // uniform in [0, 1) with 53 random bits
  double uniform();
  // exponential with the given rate, by inversion
  double exponential(double rate);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

enum class Direction { left, right };

struct GTPattern {
  // positions[n-1][k-1] = x^n_k, strictly decreasing in k
  std::vector<std::vector<int>> positions;
  int levels() const { return static_cast<int>(positions.size()); }
  int at(int n, int k) const { return positions[n - 1][k - 1]; }
  bool operator==(const GTPattern&) const = default;
};

struct JumpEvent {
  double time = 0.0;
  int level = 0;
  int index = 0;
  Direction direction = Direction::right;
  int pushed_chain_length = 0;
  bool blocked = false;
};

double jump_rate(const Params& p, int n, int lam, Direction dir);
// supremum of all jump rates over positions, used as the thinning bound
double max_jump_rate(const Params& p);

GTPattern init_packed(int levels);
bool is_valid(const GTPattern& g);
// true iff lower level n and upper level n + 1 satisfy the shifted interlacing inequalities
bool levels_interlace(const GTPattern& g, int n);

// applies the attempt of clock (n, k, dir) with block/push resolution; time is left at 0
JumpEvent apply_move(GTPattern& g, int n, int k, Direction dir);

struct StepResult {
  GTPattern state;
  JumpEvent event;
};
// competing exponentials over every clock; event.time is now + waiting time
StepResult step(const Params& p, const GTPattern& state, Rng& rng, double now = 0.0);

enum class Scheduler { total_rate, per_clock };

struct SimulationOptions {
  Scheduler scheduler = Scheduler::total_rate;
  bool check_every_step = false;
  std::vector<JumpEvent>* log = nullptr;
};

GTPattern simulate(const Params& p, int levels, double gamma, std::uint64_t seed,
                   const SimulationOptions& opts = {});

void write_snapshot(std::ostream& os, const GTPattern& g);
GTPattern read_snapshot(std::istream& is);
std::string snapshot_string(const GTPattern& g);

}  // namespace jgl
