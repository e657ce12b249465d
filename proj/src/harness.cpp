#include "jgl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace jgl {

using json = nlohmann::json;

namespace {

json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number, got " + j.dump());
}

json points_to_json(const PointSet& pts) {
  json arr = json::array();
  for (const auto& q : pts) arr.push_back({q.s, q.n});
  return arr;
}

PointSet points_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("points must be an array of [s, n] pairs");
  PointSet pts;
  for (const auto& q : j) {
    if (!q.is_array() || q.size() != 2 || !q[0].is_number_integer() || !q[1].is_number_integer())
      throw std::invalid_argument("each point must be an integer pair [s, n], got " + q.dump());
    pts.push_back({q[0].get<int>(), q[1].get<int>()});
  }
  return pts;
}

json check_to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"passed", c.passed},
          {"metric", number_to_json(c.metric)},
          {"tolerance", number_to_json(c.tolerance)},
          {"detail", c.detail},
          {"seconds", c.seconds}};
}

CheckResult check_from_json(const json& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  c.passed = j.at("passed").get<bool>();
  c.metric = number_from_json(j.at("metric"));
  c.tolerance = number_from_json(j.at("tolerance"));
  c.detail = j.value("detail", "");
  c.seconds = j.value("seconds", 0.0);
  return c;
}

Sampler default_sampler(Scheduler scheduler) {
  return [scheduler](const Params& p, int levels, double gamma, std::uint64_t seed) {
    SimulationOptions opts;
    opts.scheduler = scheduler;
    return simulate(p, levels, gamma, seed, opts);
  };
}

// runs body(trial, worker) for trial in [0, count) across workers; trials are claimed in blocks
template <class Body>
void parallel_trials(std::int64_t count, int workers, Body body) {
  workers = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, count)));
  if (workers == 1) {
    for (std::int64_t t = 0; t < count; ++t) body(t, 0);
    return;
  }
  constexpr std::int64_t block = 256;
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::int64_t start = next.fetch_add(block);
          if (start >= count) break;
          const std::int64_t stop = std::min(count, start + block);
          for (std::int64_t t = start; t < stop; ++t) body(t, w);
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!(cfg.alpha > -1.0) || !(cfg.beta > -1.0)) throw std::invalid_argument("alpha and beta must exceed -1");
  if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) throw std::invalid_argument("gamma must be finite and >= 0");
  if (cfg.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.threads < 0) throw std::invalid_argument("threads must be >= 0");
  for (const auto& set : config_targets(cfg)) {
    if (set.empty()) throw std::invalid_argument("empty point set");
    std::set<std::pair<int, int>> seen;
    for (const auto& q : set) {
      if (q.n < 1 || q.n > cfg.levels)
        throw std::invalid_argument("point level " + std::to_string(q.n) + " outside 1.." + std::to_string(cfg.levels));
      if (q.s < 0) throw std::invalid_argument("point positions must be >= 0");
      if (!seen.insert({q.s, q.n}).second) throw std::invalid_argument("repeated point " + format_points({q}));
    }
  }
}

std::vector<PointSet> config_targets(const RunConfig& cfg) {
  if (!cfg.targets.empty()) return cfg.targets;
  if (!cfg.points.empty()) return {cfg.points};
  return {};
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known{"alpha",  "beta",   "gamma",     "levels", "trials",
                                           "seed",   "points", "targets",   "scheduler", "threads"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  RunConfig cfg;
  try {
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.gamma = j.value("gamma", cfg.gamma);
    cfg.levels = j.value("levels", cfg.levels);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const json::type_error& e) {
    throw std::invalid_argument(std::string("config field has the wrong type: ") + e.what());
  }
  if (j.contains("points")) cfg.points = points_from_json(j["points"]);
  if (j.contains("targets")) {
    if (!j["targets"].is_array()) throw std::invalid_argument("targets must be an array of point lists");
    for (const auto& t : j["targets"]) cfg.targets.push_back(points_from_json(t));
  }
  if (j.contains("scheduler")) {
    const auto s = j["scheduler"].is_string() ? j["scheduler"].get<std::string>() : std::string();
    if (s == "total_rate")
      cfg.scheduler = Scheduler::total_rate;
    else if (s == "per_clock")
      cfg.scheduler = Scheduler::per_clock;
    else
      throw std::invalid_argument("scheduler must be \"total_rate\" or \"per_clock\"");
  }
  validate_config(cfg);
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json j{{"alpha", cfg.alpha},
         {"beta", cfg.beta},
         {"gamma", cfg.gamma},
         {"levels", cfg.levels},
         {"trials", cfg.trials},
         {"seed", cfg.seed},
         {"scheduler", cfg.scheduler == Scheduler::total_rate ? "total_rate" : "per_clock"},
         {"threads", cfg.threads}};
  if (!cfg.points.empty()) j["points"] = points_to_json(cfg.points);
  if (!cfg.targets.empty()) {
    json arr = json::array();
    for (const auto& t : cfg.targets) arr.push_back(points_to_json(t));
    j["targets"] = arr;
  }
  return j.dump(2);
}

PointSet parse_points(const std::string& text) {
  PointSet pts;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ';')) ++i;
  };
  auto integer = [&]() {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(text.substr(i), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("expected an integer at offset " + std::to_string(i) + " in '" + text + "'");
    }
    i += used;
    return v;
  };
  auto expect = [&](char c) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != c)
      throw std::invalid_argument(std::string("expected '") + c + "' at offset " + std::to_string(i) + " in '" + text + "'");
    ++i;
  };
  skip();
  while (i < text.size()) {
    expect('(');
    const int s = integer();
    expect(',');
    const int n = integer();
    expect(')');
    pts.push_back({s, n});
    skip();
  }
  if (pts.empty()) throw std::invalid_argument("no points in '" + text + "'");
  return pts;
}

std::string format_points(const PointSet& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ';';
    out += "(" + std::to_string(pts[i].s) + "," + std::to_string(pts[i].n) + ")";
  }
  return out;
}

int worker_count(int requested) {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (requested > 0) return requested;
  if (const char* env = std::getenv("JGL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return std::min(v, hw);
  }
  return hw;
}

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
  std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1));
  splitmix64(state);
  return splitmix64(state);
}

bool contains_points(const GTPattern& g, const PointSet& pts) {
  for (const auto& q : pts) {
    if (q.n < 1 || q.n > g.levels()) return false;
    const auto& row = g.positions[q.n - 1];
    if (std::find(row.begin(), row.end(), q.s) == row.end()) return false;
  }
  return true;
}

EstimateReport mc_estimate(const RunConfig& cfg, const Sampler& sampler) {
  validate_config(cfg);
  const auto targets = config_targets(cfg);
  if (targets.empty()) throw std::invalid_argument("mc_estimate: no target points");
  const Params p = make_params(cfg.alpha, cfg.beta);
  const Sampler draw = sampler ? sampler : default_sampler(cfg.scheduler);
  const auto t0 = std::chrono::steady_clock::now();
  const int workers = worker_count(cfg.threads);
  std::vector<std::vector<std::int64_t>> hits(workers, std::vector<std::int64_t>(targets.size(), 0));
  parallel_trials(cfg.trials, workers, [&](std::int64_t t, int w) {
    const GTPattern g = draw(p, cfg.levels, cfg.gamma, trial_seed(cfg.seed, t));
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (contains_points(g, targets[i])) ++hits[w][i];
  });
  EstimateReport rep;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials;
  const double n = static_cast<double>(cfg.trials);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    TargetEstimate est;
    est.points = targets[i];
    for (const auto& h : hits) est.hits += h[i];
    est.empirical = est.hits / n;
    est.std_error = std::sqrt(est.empirical * (1.0 - est.empirical) / n);
    est.predicted = correlation(p, cfg.gamma, targets[i]).value;
    const double diff = est.empirical - est.predicted;
    if (est.std_error > 0.0)
      est.z_score = diff / est.std_error;
    else
      est.z_score = std::fabs(diff) < 1e-8 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    rep.targets.push_back(est);
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string report_to_json(const EstimateReport& rep, bool with_timing) {
  json targets = json::array();
  for (const auto& t : rep.targets)
    targets.push_back({{"points", points_to_json(t.points)},
                       {"hits", t.hits},
                       {"empirical", t.empirical},
                       {"std_error", t.std_error},
                       {"predicted", t.predicted},
                       {"z_score", number_to_json(t.z_score)}});
  json meta{{"seed", rep.seed}, {"trials", rep.trials}};
  if (with_timing) meta["wall_time"] = rep.wall_time;
  return json{{"targets", targets}, {"metadata", meta}}.dump(2);
}

EstimateReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  EstimateReport rep;
  for (const auto& t : j.at("targets")) {
    TargetEstimate e;
    e.points = points_from_json(t.at("points"));
    e.hits = t.at("hits").get<std::int64_t>();
    e.empirical = t.at("empirical").get<double>();
    e.std_error = t.at("std_error").get<double>();
    e.predicted = t.at("predicted").get<double>();
    e.z_score = number_from_json(t.at("z_score"));
    rep.targets.push_back(e);
  }
  const auto& meta = j.at("metadata");
  rep.seed = meta.at("seed").get<std::uint64_t>();
  rep.trials = meta.at("trials").get<std::int64_t>();
  rep.wall_time = meta.value("wall_time", 0.0);
  return rep;
}

std::vector<PointSet> standard_battery() {
  return {{{0, 1}},
          {{1, 1}},
          {{0, 2}},
          {{2, 2}},
          {{1, 3}},
          {{0, 4}},
          {{3, 4}},
          {{0, 1}, {1, 2}},
          {{0, 3}, {2, 3}},
          {{1, 3}, {1, 4}},
          {{0, 2}, {0, 3}, {2, 4}},
          {{1, 1}, {2, 3}}};
}

CheckResult check_monte_carlo(const ParamPairs& pairs, double gamma, std::int64_t trials, std::uint64_t seed,
                              const Sampler& sampler, int threads) {
  CheckResult r;
  r.name = "Monte Carlo correlations";
  r.tolerance = 4.5;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    double worst = 0.0;
    int above3 = 0, total = 0;
    std::ostringstream detail;
    for (auto [a, b] : pairs) {
      RunConfig cfg;
      cfg.alpha = a;
      cfg.beta = b;
      cfg.gamma = gamma;
      cfg.levels = 4;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.targets = standard_battery();
      const auto rep = mc_estimate(cfg, sampler);
      double pair_worst = 0.0;
      for (const auto& t : rep.targets) {
        const double z = std::fabs(t.z_score);
        pair_worst = std::max(pair_worst, z);
        if (z > 3.0) ++above3;
        ++total;
      }
      worst = std::max(worst, pair_worst);
      detail << "(" << a << "," << b << ") max|z|=" << std::setprecision(3) << pair_worst << "; ";
    }
    detail << above3 << " of " << total << " above 3";
    r.metric = worst;
    r.detail = detail.str();
    r.passed = worst <= r.tolerance && above3 <= 1;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport validate(const std::string& suite, const RunConfig& cfg, const ValidationHooks& hooks) {
  if (suite != "fast" && suite != "full") throw std::invalid_argument("suite must be \"fast\" or \"full\"");
  const bool full = suite == "full";
  const auto& pairs = standard_pairs();
  ValidationReport rep;
  rep.suite = suite;
  auto& c = rep.checks;
  c.push_back(check_orthonormality(pairs, full ? 30 : 15));
  c.push_back(check_recurrence(pairs));
  c.push_back(check_identities(pairs, full ? 20 : 10));
  c.push_back(check_composition(pairs, 1.1, full ? 5 : 3));
  c.push_back(check_biorthogonality(pairs, full ? 5 : 3));
  c.push_back(check_cotransition(pairs, full ? 6 : 4, full ? 6 : 4));
  c.push_back(check_single_level(pairs, 0.9, full ? 5 : 3, full ? 6 : 4));
  c.push_back(check_intertwining({{{-0.5, -0.5}, 0.25}, {{0.5, 1.0}, 0.2}}, full ? 3 : 2, full ? 8 : 6));
  c.push_back(check_packed(pairs));
  c.push_back(check_contour_residue(pairs, full ? 50 : 15));
  c.push_back(check_complement(pairs));
  c.push_back(check_mehler_heine());
  c.push_back(check_discrete_jacobi_edge());
  c.push_back(check_pearcey_single_time());
  if (full) c.push_back(check_hard_edge({-0.5, 0.5, 0.7}));
  c.push_back(check_monte_carlo(pairs, cfg.gamma, full ? 100000 : 20000, cfg.seed, hooks.sampler, cfg.threads));
  return rep;
}

std::string validation_to_json(const ValidationReport& rep) {
  json checks = json::array();
  for (const auto& ch : rep.checks) checks.push_back(check_to_json(ch));
  return json{{"suite", rep.suite}, {"all_passed", rep.all_passed()}, {"checks", checks}}.dump(2);
}

ValidationReport validation_from_json(const std::string& text) {
  const json j = json::parse(text);
  ValidationReport rep;
  rep.suite = j.at("suite").get<std::string>();
  for (const auto& ch : j.at("checks")) rep.checks.push_back(check_from_json(ch));
  return rep;
}

RegionProfile region_profile(const RunConfig& cfg, int runs) {
  validate_config(cfg);
  if (runs < 1) throw std::invalid_argument("region_profile: runs must be >= 1");
  const Params p = make_params(cfg.alpha, cfg.beta);
  const Sampler draw = default_sampler(cfg.scheduler);
  const int workers = worker_count(cfg.threads);
  struct Acc {
    std::vector<std::vector<std::int64_t>> counts;
    std::vector<double> left, right;
  };
  std::vector<Acc> acc(workers);
  for (auto& a : acc) {
    a.counts.resize(cfg.levels);
    a.left.assign(cfg.levels, 0.0);
    a.right.assign(cfg.levels, 0.0);
  }
  parallel_trials(runs, workers, [&](std::int64_t t, int w) {
    const GTPattern g = draw(p, cfg.levels, cfg.gamma, trial_seed(cfg.seed, t));
    auto& a = acc[w];
    for (int n = 1; n <= cfg.levels; ++n) {
      const auto& row = g.positions[n - 1];
      auto& cnt = a.counts[n - 1];
      for (int x : row) {
        if (x >= static_cast<int>(cnt.size())) cnt.resize(x + 1, 0);
        ++cnt[x];
      }
      a.left[n - 1] += *std::min_element(row.begin(), row.end());
      a.right[n - 1] += *std::max_element(row.begin(), row.end());
    }
  });
  RegionProfile prof;
  prof.gamma = cfg.gamma;
  prof.runs = runs;
  for (int n = 1; n <= cfg.levels; ++n) {
    ProfileLevel lv;
    lv.level = n;
    std::vector<std::int64_t> total;
    for (const auto& a : acc) {
      const auto& cnt = a.counts[n - 1];
      if (cnt.size() > total.size()) total.resize(cnt.size(), 0);
      for (std::size_t s = 0; s < cnt.size(); ++s) total[s] += cnt[s];
      lv.mean_leftmost += a.left[n - 1];
      lv.mean_rightmost += a.right[n - 1];
    }
    lv.mean_leftmost /= runs;
    lv.mean_rightmost /= runs;
    for (auto c : total) lv.density.push_back(static_cast<double>(c) / runs);
    prof.levels.push_back(lv);
  }
  return prof;
}

std::string profile_csv(const RegionProfile& prof) {
  std::ostringstream os;
  os.precision(10);
  os << "level,position,density,mean_leftmost,mean_rightmost\n";
  for (const auto& lv : prof.levels)
    for (std::size_t s = 0; s < lv.density.size(); ++s)
      os << lv.level << ',' << s << ',' << lv.density[s] << ',' << lv.mean_leftmost << ',' << lv.mean_rightmost << '\n';
  return os.str();
}

std::string profile_svg(const RegionProfile& prof, int cell) {
  if (cell < 1) throw std::invalid_argument("profile_svg: cell must be >= 1");
  std::size_t width = 1;
  for (const auto& lv : prof.levels) width = std::max(width, lv.density.size());
  const std::size_t height = std::max<std::size_t>(1, prof.levels.size());
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width * cell << "\" height=\"" << height * cell
     << "\" shape-rendering=\"crispEdges\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const auto& lv : prof.levels) {
    // level 1 at the bottom, positions increasing to the right
    const std::size_t y = (height - lv.level) * cell;
    for (std::size_t s = 0; s < lv.density.size(); ++s) {
      if (lv.density[s] <= 0.0) continue;
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, lv.density[s]))));
      os << "<rect x=\"" << s * cell << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
         << "\" fill=\"rgb(" << shade << ',' << shade << ',' << shade << ")\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<AsymptoticsRow> asymptotics_table(AsymptoticsMode mode, const Params& p,
                                              const std::vector<std::vector<double>>& grid,
                                              const std::vector<double>& sizes) {
  std::vector<AsymptoticsRow> rows;
  for (const auto& in : grid) {
    if (mode == AsymptoticsMode::jacobi_edge) {
      if (in.size() != 3) throw std::invalid_argument("jacobi-edge rows need eta,tau,s");
      const double eta = in[0], tau = in[1];
      const int s = static_cast<int>(std::lround(in[2]));
      if (!(eta > 0.0) || !(tau > 0.0) || s < 0) throw std::invalid_argument("jacobi-edge rows need eta, tau > 0 and s >= 0");
      const double eps = 1.0 - eta / tau;
      for (double N : sizes) {
        const int r = static_cast<int>(std::lround(N * eta));
        if (r < 1) throw std::invalid_argument("jacobi-edge: N * eta rounds below 1");
        const SitePoint site{s, 2 * r - 1};
        AsymptoticsRow row{in, N, kernel_K(p, N * tau, site, site), discrete_jacobi_limit(p, site, site, eps), 0.0};
        row.error = std::fabs(row.finite - row.limit);
        rows.push_back(row);
      }
    } else {
      if (in.size() != 2 && in.size() != 4) throw std::invalid_argument("pearcey rows need sigma,nu or sigma1,nu1,sigma2,nu2");
      for (double N : sizes) {
        std::vector<SitePoint> pts;
        for (std::size_t i = 0; i < in.size(); i += 2) pts.push_back(hard_edge_site(N, in[i], in[i + 1]));
        const auto cmp = hard_edge_compare(p, N, pts);
        rows.push_back({in, N, cmp.finite, cmp.limit, cmp.error});
      }
    }
  }
  return rows;
}

std::vector<std::vector<double>> read_grid(const std::string& text) {
  std::vector<std::vector<double>> grid;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    bool numeric = true;
    while (fields >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first && grid.empty()) {
        first = false;
        continue;
      }
      throw std::invalid_argument("non-numeric grid row: '" + line + "'");
    }
    if (row.empty()) continue;
    first = false;
    grid.push_back(row);
  }
  return grid;
}

std::string asymptotics_csv(AsymptoticsMode mode, const std::vector<AsymptoticsRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  const std::size_t width = mode == AsymptoticsMode::jacobi_edge ? 3 : 4;
  os << (mode == AsymptoticsMode::jacobi_edge ? "eta,tau,s" : "sigma1,nu1,sigma2,nu2") << ",N,finite,limit,error\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < width; ++i) {
      if (i < r.inputs.size()) os << r.inputs[i];
      os << ',';
    }
    os << r.size << ',' << r.finite << ',' << r.limit << ',' << r.error << '\n';
  }
  return os.str();
}

}  // namespace jgl
