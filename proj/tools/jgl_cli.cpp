#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "jgl/harness.hpp"

using namespace jgl;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

const std::map<std::string, Scheduler> kSchedulers{{"total_rate", Scheduler::total_rate},
                                                   {"per_clock", Scheduler::per_clock}};

struct Model {
  double alpha = 0.3;
  double beta = -0.4;
  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "alpha > -1")->capture_default_str();
    app->add_option("--beta", beta, "beta > -1")->capture_default_str();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi growth process: simulation, correlation kernels and validation"};
  app.require_subcommand(1);

  Model model;
  RunConfig run;
  std::string out_path, scheduler_name = "total_rate";

  auto* sim = app.add_subcommand("simulate", "run the growth process and print the final configuration");
  model.add(sim);
  sim->add_option("--gamma", run.gamma, "time")->capture_default_str();
  sim->add_option("--levels", run.levels, "number of levels")->capture_default_str();
  sim->add_option("--seed", run.seed, "random seed")->capture_default_str();
  sim->add_option("--scheduler", scheduler_name, "total_rate or per_clock")
      ->check(CLI::IsMember({"total_rate", "per_clock"}))
      ->capture_default_str();
  sim->add_option("-o,--out", out_path, "snapshot file (default stdout)");

  std::string points_text, method = "residue";
  auto* ker = app.add_subcommand("kernel", "evaluate the correlation kernel and the joint correlation at points");
  model.add(ker);
  ker->add_option("--gamma", run.gamma, "time")->capture_default_str();
  ker->add_option("--points", points_text, "points as \"(s,n);(t,m);...\"")->required();
  ker->add_option("--method", method, "u-integral evaluation: residue or contour")
      ->check(CLI::IsMember({"residue", "contour"}))
      ->capture_default_str();

  std::string config_path;
  bool no_timing = false;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates of joint correlations against the kernel");
  mc->add_option("-c,--config", config_path, "JSON run configuration")->required();
  mc->add_option("--threads", run.threads, "worker threads (overrides the config and JGL_THREADS)");
  mc->add_flag("--no-timing", no_timing, "omit wall_time from the report");
  mc->add_option("-o,--out", out_path, "report file (default stdout)");

  std::string mode = "pearcey", grid_path;
  std::vector<double> sizes{50.0, 100.0, 200.0};
  auto* asy = app.add_subcommand("asymptotics", "finite-size kernels against their scaling limits");
  model.add(asy);
  asy->add_option("--mode", mode, "jacobi-edge or pearcey")
      ->check(CLI::IsMember({"jacobi-edge", "pearcey"}))
      ->capture_default_str();
  asy->add_option("--grid", grid_path, "grid file: eta,tau,s rows or sigma,nu[,sigma2,nu2] rows")->required();
  asy->add_option("--sizes", sizes, "values of N")->delimiter(',')->capture_default_str();
  asy->add_option("-o,--out", out_path, "CSV file (default stdout)");

  std::string suite = "fast";
  auto* val = app.add_subcommand("validate", "run the numerical and statistical checks");
  val->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  val->add_option("--seed", run.seed, "Monte Carlo seed")->capture_default_str();
  val->add_option("--threads", run.threads, "worker threads");
  val->add_option("-o,--out", out_path, "JSON report file (default stdout)");

  int runs = 100, cell = 4;
  std::string csv_path, svg_path;
  auto* prof = app.add_subcommand("profile", "empirical density and frozen boundaries per level");
  model.add(prof);
  prof->add_option("--gamma", run.gamma, "time")->capture_default_str();
  prof->add_option("--levels", run.levels, "number of levels")->capture_default_str();
  prof->add_option("--seed", run.seed, "random seed")->capture_default_str();
  prof->add_option("--runs", runs, "independent runs")->capture_default_str();
  prof->add_option("--threads", run.threads, "worker threads");
  prof->add_option("--csv", csv_path, "CSV output (default stdout)");
  prof->add_option("--svg", svg_path, "SVG heat map output");
  prof->add_option("--cell", cell, "SVG cell size in pixels")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    run.alpha = model.alpha;
    run.beta = model.beta;
    run.scheduler = kSchedulers.at(scheduler_name);
    if (sim->parsed()) {
      validate_config(run);
      SimulationOptions opts;
      opts.scheduler = run.scheduler;
      emit(snapshot_string(simulate(make_params(run.alpha, run.beta), run.levels, run.gamma, run.seed, opts)),
           out_path);
    } else if (ker->parsed()) {
      const Params p = make_params(run.alpha, run.beta);
      const PointSet pts = parse_points(points_text);
      KernelOptions opts;
      opts.method = method == "contour" ? UIntegral::contour : UIntegral::residue;
      const auto corr = correlation(p, run.gamma, pts, opts);
      nlohmann::json j{{"points", format_points(pts)},
                       {"kernel", kernel_matrix(p, run.gamma, pts, opts)},
                       {"correlation", corr.value},
                       {"raw", corr.raw},
                       {"out_of_range", corr.out_of_range}};
      emit(j.dump(2), "");
    } else if (mc->parsed()) {
      const int threads = run.threads;
      RunConfig cfg = config_from_json(read_file(config_path));
      if (threads > 0) cfg.threads = threads;
      emit(report_to_json(mc_estimate(cfg), !no_timing), out_path);
    } else if (asy->parsed()) {
      const auto m = mode == "pearcey" ? AsymptoticsMode::pearcey : AsymptoticsMode::jacobi_edge;
      const auto rows = asymptotics_table(m, make_params(run.alpha, run.beta), read_grid(read_file(grid_path)), sizes);
      emit(asymptotics_csv(m, rows), out_path);
    } else if (val->parsed()) {
      const auto rep = validate(suite, run);
      for (const auto& c : rep.checks)
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "  metric=" << c.metric << "  " << c.detail << '\n';
      emit(validation_to_json(rep), out_path);
      return rep.all_passed() ? 0 : 1;
    } else if (prof->parsed()) {
      const auto pr = region_profile(run, runs);
      emit(profile_csv(pr), csv_path);
      if (!svg_path.empty()) emit(profile_svg(pr, cell), svg_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
