#include "ranksde/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ranksde/classify.hpp"
#include "ranksde/estimators.hpp"
#include "ranksde/expectations.hpp"
#include "ranksde/family.hpp"
#include "ranksde/io.hpp"
#include "ranksde/panel.hpp"
#include "ranksde/simulate.hpp"

namespace ranksde {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

AtlasParams parse_atlas(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw std::invalid_argument("--atlas expects exactly 'g,sigma2'");
  auto parse = [](const std::string& token, const char* name) {
    const char* s = token.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
      throw std::invalid_argument(std::string("--atlas ") + name +
                                  " does not parse as a number");
    return v;
  };
  return AtlasParams{parse(text.substr(0, comma), "g"),
                     parse(text.substr(comma + 1), "sigma2")};
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

void validate_schedule(const std::vector<std::size_t>& schedule) {
  if (schedule.size() < 2)
    throw std::invalid_argument("--n-schedule needs at least two sizes");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 2)
      throw std::invalid_argument("--n-schedule sizes must be at least 2");
    if (i && schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("--n-schedule must be strictly increasing");
  }
}

struct SimulateOpts {
  std::string family_path, atlas, out;
  std::size_t n = 100;
  double dt = 0.01;
  std::size_t steps = 100000;
  std::optional<std::size_t> burn_in;
  std::uint64_t seed = 0;
};

void run_simulate(const SimulateOpts& opt) {
  if (opt.family_path.empty() && opt.atlas.empty())
    throw std::invalid_argument("simulate needs --family or --atlas");
  SimulationConfig cfg;
  cfg.n = opt.n;
  cfg.dt = opt.dt;
  cfg.num_steps = opt.steps;
  cfg.burn_in = opt.burn_in;
  cfg.seed = opt.seed;
  PathEnsemble ensemble =
      opt.atlas.empty()
          ? simulate_first_order(load_family(opt.family_path), cfg)
          : simulate_atlas(parse_atlas(opt.atlas), cfg);
  save_panel_csv(ensemble_to_panel(std::move(ensemble)), opt.out);
}

struct EstimateOpts {
  std::string panel, out;
  bool detrend_flag = false;
  std::size_t smooth_window = 0;
};

void run_estimate(const EstimateOpts& opt) {
  PanelSeries panel = load_panel_csv(opt.panel);
  if (opt.detrend_flag) panel = detrend(panel);
  RankGapStats stats = compute_rank_gap_stats(panel);
  if (opt.smooth_window > 0 && stats.N >= 2) {
    std::size_t w = std::min(opt.smooth_window, stats.N - 1);
    stats.lambda_hat = gaussian_smooth(stats.lambda_hat, w);
    stats.sigma2_hat = gaussian_smooth(stats.sigma2_hat, w);
  }
  save_stats_csv(stats, opt.out);
}

struct ApproxOpts {
  std::string panel, out;
  std::size_t smooth_window = 100;  // clamped to the panel's rank count
};

void run_approx(const ApproxOpts& opt) {
  auto raw = first_order_approx(load_panel_csv(opt.panel));
  auto smoothed = smooth_family(raw.family, opt.smooth_window);
  save_family(smoothed.family, opt.out);
}

struct ClassifyOpts {
  std::string family_path, out;
  std::size_t depth = 0;
  ClassifyTolerances tol;
};

void run_classify(const ClassifyOpts& opt) {
  auto family = load_family(opt.family_path);
  auto res = classify(family, opt.depth, opt.tol);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("verdict", to_string(res.verdict));
  kv.emplace_back("depth", std::to_string(opt.depth));
  kv.emplace_back("s1", fmt17(res.s1));
  kv.emplace_back("tail_estimate", fmt17(res.tail_estimate));
  kv.emplace_back("max_mono_violation", fmt17(res.max_mono_violation));
  kv.emplace_back("tol_zipf", fmt17(res.tol.zipf));
  kv.emplace_back("tol_mono", fmt17(res.tol.mono));
  std::string curve;
  for (std::size_t i = 0; i < res.s_curve.size(); ++i) {
    if (i) curve += ",";
    curve += fmt17(res.s_curve[i]);
  }
  kv.emplace_back("s_curve", curve);
  save_report(kv, opt.out);
}

struct CheckOpts {
  std::string family_path, cond, out;
  std::vector<std::size_t> schedule;
  McConfig mc;
};

void run_check(const CheckOpts& opt) {
  validate_schedule(opt.schedule);
  auto family = load_family(opt.family_path);
  auto evaluate = [&](std::size_t n) {
    if (opt.cond == "conservative") return conservation_estimate(family, n, opt.mc);
    if (opt.cond == "complete") return completeness_estimate(family, n, opt.mc);
    return top_weight(family, n, opt.mc);
  };
  std::vector<ExpectationEstimate> rows;
  rows.reserve(opt.schedule.size());
  for (std::size_t n : opt.schedule) rows.push_back(evaluate(n));

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("cond", opt.cond);
  kv.emplace_back("n_schedule", join(opt.schedule));
  for (const auto& row : rows) {
    kv.emplace_back("value_" + std::to_string(row.n), fmt17(row.value));
    kv.emplace_back("se_" + std::to_string(row.n), fmt17(row.std_error));
  }
  if (opt.cond == "topweight") {
    bool bounded =
        rows.back().value <= 0.5 + 3.0 * rows.back().std_error;
    kv.emplace_back("bounded", bounded ? "true" : "false");
  } else {
    bool to_zero = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(std::fabs(rows[i].value) < std::fabs(rows[i - 1].value)))
        to_zero = false;
    if (!(std::fabs(rows.back().value) <= 0.75 * std::fabs(rows.front().value)))
      to_zero = false;
    kv.emplace_back("to_zero", to_zero ? "true" : "false");
  }
  save_report(kv, opt.out);
}

struct TuneOpts {
  std::string out;
  double g = 0, sigma2 = 0;
  std::size_t n = 0;
  McConfig mc;
};

void run_tune(const TuneOpts& opt) {
  auto res = tune_e1_rho(opt.g, opt.sigma2, opt.n, opt.mc);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("rho2", fmt17(res.rho2));
  kv.emplace_back("residual", fmt17(res.residual));
  kv.emplace_back("residual_se", fmt17(res.residual_se));
  kv.emplace_back("f_lower", fmt17(res.f_lower));
  kv.emplace_back("f_upper", fmt17(res.f_upper));
  kv.emplace_back("monotone", res.monotone ? "true" : "false");
  kv.emplace_back("linearity_residual", fmt17(res.linearity_residual));
  kv.emplace_back("iterations", std::to_string(res.iterations));
  kv.emplace_back("truncation_bound", fmt17(res.truncation_bound));
  save_report(kv, opt.out);
}

struct PlotOpts {
  std::string panel, family_path, out;
  std::size_t depth = 0;
};

void run_plot(const PlotOpts& opt) {
  const bool svg = ends_with(opt.out, ".svg");
  const bool csv = ends_with(opt.out, ".csv");
  if (!svg && !csv)
    throw std::invalid_argument("--out must end in .svg or .csv");
  if (csv && !opt.family_path.empty())
    throw std::invalid_argument("overlay curves need an .svg output path");
  auto panel = load_panel_csv(opt.panel);
  auto curve = distribution_curve(panel, opt.depth);
  if (csv) {
    emit_curve_csv(curve, opt.out);
    return;
  }
  if (opt.family_path.empty()) {
    emit_curve_svg(curve, nullptr, opt.out);
    return;
  }
  auto family = load_family(opt.family_path);
  auto overlay =
      predicted_curve(family, opt.depth, curve.mean_log_value.front());
  emit_curve_svg(curve, &overlay, opt.out);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Rank-based interacting diffusion toolkit"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Integrate a rank-based system and write a panel CSV");
  auto* fam_opt = simulate->add_option(
      "--family", sim.family_path, "first-order family file to simulate");
  auto* atlas_opt = simulate->add_option(
      "--atlas", sim.atlas, "bottom-push parameters as 'g,sigma2'");
  fam_opt->excludes(atlas_opt);
  atlas_opt->excludes(fam_opt);
  simulate->add_option("--n", sim.n, "number of entities")
      ->capture_default_str();
  simulate->add_option("--dt", sim.dt, "integration step")
      ->capture_default_str();
  simulate->add_option("--steps", sim.steps, "number of steps")
      ->capture_default_str();
  simulate->add_option("--burn-in", sim.burn_in,
                       "steps discarded before recording (default 20%)");
  simulate->add_option("--seed", sim.seed, "random seed")
      ->capture_default_str();
  simulate->add_option("--out", sim.out, "panel CSV path")->required();
  simulate->callback([&] { run_simulate(sim); });

  EstimateOpts est;
  auto* estimate = app.add_subcommand(
      "estimate", "Estimate collision rates and gap variances from a panel");
  estimate->add_option("--panel", est.panel, "panel CSV path")->required();
  estimate->add_flag("--detrend", est.detrend_flag,
                     "rescale each time slice to the initial total");
  estimate->add_option("--smooth-window", est.smooth_window,
                       "Gaussian window over the rate estimates (0 = raw)")
      ->capture_default_str();
  estimate->add_option("--out", est.out, "stats CSV path")->required();
  estimate->callback([&] { run_estimate(est); });

  ApproxOpts apx;
  auto* approx = app.add_subcommand(
      "approx", "Build the first-order family that matches a panel");
  approx->add_option("--panel", apx.panel, "panel CSV path")->required();
  approx->add_option("--smooth-window", apx.smooth_window,
                     "Gaussian window over the family parameters, clamped "
                     "to the rank count (0 = raw)")
      ->capture_default_str();
  approx->add_option("--out", apx.out, "family file path")->required();
  approx->callback([&] { run_approx(apx); });

  ClassifyOpts cls;
  auto* classify_cmd = app.add_subcommand(
      "classify", "Classify a family as Zipfian, quasi-Zipfian, or neither");
  classify_cmd->add_option("--family", cls.family_path, "family file path")
      ->required();
  classify_cmd->add_option("--depth", cls.depth, "ranks to examine")
      ->required();
  classify_cmd
      ->add_option("--tol-zipf", cls.tol.zipf, "slope tolerance around one")
      ->capture_default_str();
  classify_cmd
      ->add_option("--tol-mono", cls.tol.mono,
                   "allowed decrease between adjacent slopes")
      ->capture_default_str();
  classify_cmd->add_option("--out", cls.out, "report path")->required();
  classify_cmd->callback([&] { run_classify(cls); });

  CheckOpts chk;
  auto* check = app.add_subcommand(
      "check", "Estimate a limit functional over a growing-size schedule");
  check->add_option("--family", chk.family_path, "family file path")
      ->required();
  check
      ->add_option("--cond", chk.cond,
                   "functional: conservative, complete, or topweight")
      ->required()
      ->check(CLI::IsMember({"conservative", "complete", "topweight"}));
  check->add_option("--n-schedule", chk.schedule, "system sizes, ascending")
      ->required()
      ->delimiter(',');
  check->add_option("--mc", chk.mc.samples, "Monte Carlo samples per size")
      ->capture_default_str();
  check->add_option("--seed", chk.mc.seed, "random seed")
      ->capture_default_str();
  check->add_option("--workers", chk.mc.workers,
                    "worker threads (never changes the numbers)")
      ->capture_default_str();
  check->add_option("--out", chk.out, "report path")->required();
  check->callback([&] { run_check(chk); });

  TuneOpts tune;
  auto* tune_cmd = app.add_subcommand(
      "tune-e1", "Split variance between odd and even ranks to null the "
                 "total-drift functional");
  tune_cmd->add_option("--g", tune.g, "downward drift rate")->required();
  tune_cmd->add_option("--sigma2", tune.sigma2, "mean variance level")
      ->required();
  tune_cmd->add_option("--n", tune.n, "system size (even)")->required();
  tune_cmd->add_option("--mc", tune.mc.samples, "Monte Carlo samples")
      ->capture_default_str();
  tune_cmd->add_option("--seed", tune.mc.seed, "random seed")
      ->capture_default_str();
  tune_cmd->add_option("--workers", tune.mc.workers,
                       "worker threads (never changes the numbers)")
      ->capture_default_str();
  tune_cmd->add_option("--out", tune.out, "report path")->required();
  tune_cmd->callback([&] { run_tune(tune); });

  PlotOpts plot;
  auto* plot_cmd = app.add_subcommand(
      "plot", "Write the log-log distribution curve as SVG or CSV");
  plot_cmd->add_option("--panel", plot.panel, "panel CSV path")->required();
  plot_cmd->add_option("--family", plot.family_path,
                       "family file for a predicted overlay curve");
  plot_cmd->add_option("--depth", plot.depth, "ranks to plot")->required();
  plot_cmd->add_option("--out", plot.out, "output path (.svg or .csv)")
      ->required();
  plot_cmd->callback([&] { run_plot(plot); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace ranksde
