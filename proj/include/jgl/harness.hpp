#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jgl/checks.hpp"
#include "jgl/growth.hpp"
#include "jgl/kernels.hpp"

namespace jgl {

using PointSet = std::vector<SitePoint>;

struct RunConfig {
  double alpha = 0.3;
  double beta = -0.4;
  double gamma = 1.0;
  int levels = 4;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  // a single joint target; ignored when targets is nonempty
  PointSet points;
  std::vector<PointSet> targets;
  Scheduler scheduler = Scheduler::total_rate;
  // 0 means JGL_THREADS or the hardware concurrency
  int threads = 0;
};

// throws std::invalid_argument on alpha, beta <= -1, trials < 1, gamma < 0, or a point above `levels`
void validate_config(const RunConfig& cfg);
std::vector<PointSet> config_targets(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& cfg);
// "(s,n);(t,m);..." with semicolons or whitespace between points
PointSet parse_points(const std::string& text);
std::string format_points(const PointSet& pts);

struct TargetEstimate {
  PointSet points;
  std::int64_t hits = 0;
  double empirical = 0.0;
  double std_error = 0.0;
  double predicted = 0.0;
  double z_score = 0.0;
};

struct EstimateReport {
  std::vector<TargetEstimate> targets;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  double wall_time = 0.0;
};

// sampler(params, levels, gamma, trial_seed) -> configuration at time gamma
using Sampler = std::function<GTPattern(const Params&, int, double, std::uint64_t)>;

// min(JGL_THREADS, hardware concurrency), at least 1; requested > 0 overrides the hardware default
int worker_count(int requested = 0);
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial);
bool contains_points(const GTPattern& g, const PointSet& pts);

EstimateReport mc_estimate(const RunConfig& cfg, const Sampler& sampler = {});
// wall_time is omitted when with_timing is false so that reports from equal seeds compare byte for byte
std::string report_to_json(const EstimateReport& rep, bool with_timing = true);
EstimateReport report_from_json(const std::string& text);

// twelve point sets on levels <= 4 used by the statistical battery
std::vector<PointSet> standard_battery();
// every |z| <= 4.5 and at most one |z| > 3 over all pairs and point sets
CheckResult check_monte_carlo(const ParamPairs& pairs, double gamma, std::int64_t trials, std::uint64_t seed,
                              const Sampler& sampler = {}, int threads = 0);

struct ValidationReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

struct ValidationHooks {
  Sampler sampler;  // replaces the simulator in the Monte Carlo check
};

// suite "fast" or "full"
ValidationReport validate(const std::string& suite, const RunConfig& cfg = {}, const ValidationHooks& hooks = {});
std::string validation_to_json(const ValidationReport& rep);
ValidationReport validation_from_json(const std::string& text);

struct ProfileLevel {
  int level = 0;
  double mean_leftmost = 0.0;
  double mean_rightmost = 0.0;
  std::vector<double> density;  // density[s] = fraction of runs with a particle at s
};

struct RegionProfile {
  double gamma = 0.0;
  int runs = 0;
  std::vector<ProfileLevel> levels;
};

// runs trajectories with seeds trial_seed(cfg.seed, i), i < runs
RegionProfile region_profile(const RunConfig& cfg, int runs = 1);
// columns: level,position,density,mean_leftmost,mean_rightmost
std::string profile_csv(const RegionProfile& prof);
std::string profile_svg(const RegionProfile& prof, int cell = 4);

enum class AsymptoticsMode { jacobi_edge, pearcey };

struct AsymptoticsRow {
  std::vector<double> inputs;
  double size = 0.0;
  double finite = 0.0;
  double limit = 0.0;
  double error = 0.0;
};

// jacobi-edge rows: eta,tau,s (one point on the odd level with r = round(N eta), gamma = N tau)
// pearcey rows: sigma,nu or sigma1,nu1,sigma2,nu2 (sites from hard_edge_site, gamma = N/2)
std::vector<AsymptoticsRow> asymptotics_table(AsymptoticsMode mode, const Params& p,
                                              const std::vector<std::vector<double>>& grid,
                                              const std::vector<double>& sizes);
// numeric rows, comma or whitespace separated; blank lines, '#' comments and a non-numeric header are skipped
std::vector<std::vector<double>> read_grid(const std::string& text);
std::string asymptotics_csv(AsymptoticsMode mode, const std::vector<AsymptoticsRow>& rows);

}  // namespace jgl
