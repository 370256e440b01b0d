// Command-line front end: solve | bench | curve | adaptive | weber.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "garo/adaptive.hpp"
#include "garo/analytic.hpp"
#include "garo/baselines.hpp"
#include "garo/bench.hpp"
#include "garo/garo_solvers.hpp"

namespace {

using nlohmann::json;

garo::Vector to_vector(const json& j) {
  garo::Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

garo::Matrix to_matrix(const json& j) {
  if (j.empty()) return garo::Matrix(0, 0);
  garo::Matrix m(j.size(), j[0].size());
  for (size_t r = 0; r < j.size(); ++r)
    for (size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
  return m;
}

json from_vector(const garo::Vector& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

struct Instance {
  garo::LinearDecisionProblem problem;
  garo::UncertaintyModel model;
  garo::GammaInterval range;
};

// Schema: {"A": [[..]], "b": [..], "lower": [..], "upper": [..],
//          "model": {"type": "normball"|"ellipsoidal"|"discrete", ...},
//          "gamma": [lo, hi]}
Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  json j;
  f >> j;

  garo::LinearDecisionProblem prob(to_matrix(j.at("A")), to_vector(j.at("b")),
                                   to_vector(j.at("lower")), to_vector(j.at("upper")));

  const json& jm = j.at("model");
  const std::string type = jm.at("type").get<std::string>();
  garo::UncertaintyModel model;
  if (type == "normball") {
    const std::string norm = jm.at("norm").get<std::string>();
    garo::NormKind kind;
    if (norm == "l1") kind = garo::NormKind::L1;
    else if (norm == "l2") kind = garo::NormKind::L2;
    else if (norm == "linf") kind = garo::NormKind::Linf;
    else throw std::runtime_error("unknown norm: " + norm);
    model = garo::NormBallModel{to_vector(jm.at("p0")), kind};
  } else if (type == "ellipsoidal") {
    model = garo::EllipsoidalModel{to_vector(jm.at("p0")), to_matrix(jm.at("sigma"))};
  } else if (type == "discrete") {
    std::vector<garo::Vector> pts;
    for (const auto& p : jm.at("points")) pts.push_back(to_vector(p));
    model = garo::DiscreteScenariosModel{pts};
  } else {
    throw std::runtime_error("unknown model type: " + type);
  }

  const json& jg = j.at("gamma");
  return {std::move(prob), std::move(model),
          garo::GammaInterval(jg.at(0).get<double>(), jg.at(1).get<double>())};
}

std::vector<double> linear_grid(const garo::GammaInterval& r, int size) {
  std::vector<double> g;
  for (int t = 0; t < size; ++t)
    g.push_back(r.lo + (r.hi - r.lo) * static_cast<double>(t) /
                           static_cast<double>(std::max(size - 1, 1)));
  return g;
}

int run_solve(const std::string& instance_path, const std::string& method, double param,
              int grid_size) {
  const Instance inst = load_instance(instance_path);
  json out;
  out["method"] = method;
  out["param"] = param;
  if (method == "ro") {
    const auto [x, v] = garo::solve_ro(inst.problem, inst.model, param);
    out["x"] = from_vector(x);
    out["value"] = v;
  } else if (method == "ro_d") {
    const auto* d = std::get_if<garo::DiscreteScenariosModel>(&inst.model);
    if (!d) throw std::runtime_error("ro_d needs a discrete scenario model");
    const auto [x, v] = garo::solve_ro_discrete(inst.problem, d->points);
    out["x"] = from_vector(x);
    out["value"] = v;
  } else if (method == "reg") {
    const auto* d = std::get_if<garo::DiscreteScenariosModel>(&inst.model);
    if (!d) throw std::runtime_error("reg needs a discrete scenario model");
    const auto [x, a] = garo::solve_regret_discrete(inst.problem, d->points);
    out["x"] = from_vector(x);
    out["alpha"] = a;
  } else if (method == "sat") {
    const auto res = garo::solve_satisficing(inst.problem, inst.model,
                                             {param, linear_grid(inst.range, grid_size)});
    out["status"] = garo::to_string(res.status);
    out["f0"] = res.f0;
    out["target_in_range"] = res.target_in_range;
    if (res.status == garo::SolveStatus::Optimal) {
      out["x"] = from_vector(res.x);
      out["alpha"] = res.alpha;
    }
  } else if (method == "garo") {
    const auto sol = garo::solve_garo_discretized(
        inst.problem, inst.model, linear_grid(inst.range, grid_size), garo::PowerRate{param});
    out["x"] = from_vector(sol.x);
    out["alpha"] = sol.alpha;
    out["min_slack"] = sol.min_slack();
  } else if (method == "garo_cg") {
    garo::RobustOracleCache cache(inst.problem, inst.model);
    const auto sep = [&](const garo::Vector& x, double alpha) {
      return garo::separate_parametric(inst.problem, inst.model, x, alpha, inst.range,
                                       garo::PowerRate{param});
    };
    const auto sol = garo::solve_garo_constraint_generation(
        inst.problem, inst.model, inst.range, garo::PowerRate{param}, 1e-6, sep, 500, &cache);
    out["x"] = from_vector(sol.x);
    out["alpha"] = sol.alpha;
    out["converged"] = sol.converged;
    out["iterations"] = sol.log.size();
    out["certified_gap"] = sol.certified_gap;
  } else {
    throw std::runtime_error("unknown method: " + method +
                             " (expected ro|ro_d|reg|sat|garo|garo_cg)");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

garo::DataVariant parse_variant(const std::string& s) {
  if (s == "gaussian") return garo::DataVariant::Gaussian;
  if (s == "inverse") return garo::DataVariant::GaussianInverseMV;
  if (s == "heavytail") return garo::DataVariant::HeavyTail;
  throw CLI::ValidationError("--data", "expected gaussian|inverse|heavytail");
}

void filter_methods(garo::MethodGrid& grid, const std::string& csv) {
  if (csv.empty()) return;
  const auto has = [&](const std::string& m) {
    return ("," + csv + ",").find("," + m + ",") != std::string::npos;
  };
  if (!has("ro")) grid.ro_theta.clear();
  if (!has("ro_d")) grid.rod_theta.clear();
  if (!has("sat")) grid.sat_beta.clear();
  if (!has("reg")) grid.reg_theta.clear();
  if (!has("garo")) grid.garo_q.clear();
}

int run_bench(const garo::SuiteConfig& cfg, const std::string& out_dir, bool curves_only) {
  const auto report = garo::run_suite(cfg);
  garo::ExperimentReport filtered = report;
  if (curves_only) filtered.rows.clear();
  garo::emit_csv(filtered, out_dir);
  for (const auto& f : report.failures) std::cerr << "cell failure: " << f << "\n";
  std::cerr << "wrote " << filtered.rows.size() << " tradeoff rows, "
            << filtered.guarantees.size() << " guarantee samples to " << out_dir << "\n";
  return report.failures.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Globalized adversarial regret optimization toolkit"};
  app.require_subcommand(1);

  // solve
  std::string instance_path, method = "garo";
  double param = 1.0;
  int solve_grid = 100;
  auto* solve_cmd = app.add_subcommand("solve", "Run one method on one instance file");
  solve_cmd->add_option("instance", instance_path, "JSON instance file")->required();
  solve_cmd->add_option("--method", method, "ro|ro_d|reg|sat|garo|garo_cg");
  solve_cmd->add_option("--param", param, "gamma (ro), beta (sat), q (garo)");
  solve_cmd->add_option("--grid-size", solve_grid, "discretization grid size");

  // bench / curve share flags
  int n = 20, m = 1000, seeds = 3, grid_size = 100;
  std::string data = "gaussian", methods_csv, out_dir = ".";
  bool full_scale = false;
  unsigned long long master_seed = 1;
  const auto add_suite_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "decision dimension");
    cmd->add_option("--m", m, "samples per dataset");
    cmd->add_option("--seeds", seeds, "instances and datasets per axis");
    cmd->add_option("--data", data, "gaussian|inverse|heavytail");
    cmd->add_option("--methods", methods_csv, "comma list: ro,ro_d,sat,reg,garo");
    cmd->add_option("--grid-size", grid_size, "radii per cell (T+1)");
    cmd->add_option("--out", out_dir, "output directory for the CSV files");
    cmd->add_option("--seed", master_seed, "master RNG seed");
    cmd->add_flag("--full-scale", full_scale, "paper scale: n=50 m=5000 5x5 cells");
  };
  auto* bench_cmd = app.add_subcommand("bench", "Run the full benchmark suite");
  add_suite_flags(bench_cmd);
  auto* curve_cmd = app.add_subcommand("curve", "Guarantee curves only (guarantees.csv)");
  add_suite_flags(curve_cmd);

  // adaptive
  garo::LepskiiSimConfig lep;
  auto* adaptive_cmd = app.add_subcommand("adaptive", "Lepskii adaptation demo");
  adaptive_cmd->add_option("--trials", lep.trials, "Monte-Carlo trials");
  adaptive_cmd->add_option("--samples", lep.N, "samples per trial");
  adaptive_cmd->add_option("--levels", lep.J, "confidence levels J (0..J)");
  adaptive_cmd->add_option("--beta", lep.beta, "geometric radius factor");
  adaptive_cmd->add_option("--delta", lep.delta, "confidence level");
  adaptive_cmd->add_option("--seed", lep.seed, "RNG seed");

  // weber
  double q = 2.0;
  auto* weber_cmd = app.add_subcommand("weber", "Closed-form half-line checks");
  weber_cmd->add_option("--q", q, "rate exponent (q >= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(instance_path, method, param, solve_grid);
    if (bench_cmd->parsed() || curve_cmd->parsed()) {
      garo::SuiteConfig cfg;
      cfg.n = full_scale ? 50 : n;
      cfg.m = full_scale ? 5000 : m;
      cfg.num_instances = cfg.num_datasets = full_scale ? 5 : seeds;
      cfg.variant = parse_variant(data);
      cfg.methods.grid_size = grid_size;
      filter_methods(cfg.methods, methods_csv);
      cfg.master_seed = master_seed;
      return run_bench(cfg, out_dir, curve_cmd->parsed());
    }
    if (adaptive_cmd->parsed()) {
      const auto res = garo::run_lepskii_simulation(lep);
      std::printf("trials=%d successes=%d fraction=%.4f target>=%.4f\n", res.trials,
                  res.successes, res.success_fraction(), 1.0 - lep.delta);
      return res.success_fraction() >= 1.0 - lep.delta - 0.03 ? 0 : 1;
    }
    if (weber_cmd->parsed()) {
      const auto res = garo::weber_garo(q);
      std::printf("q=%g mu=[%.12f, %.12f] alpha=%.12f\n", q, res.mu_lo, res.mu_hi, res.alpha);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
