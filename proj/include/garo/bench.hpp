#ifndef GARO_BENCH_HPP
#define GARO_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "garo/baselines.hpp"
#include "garo/garo_solvers.hpp"
#include "garo/problem.hpp"
#include "garo/uncertainty.hpp"

namespace garo {

struct KnapsackInstanceSpec {
  int n = 20;
  unsigned long long seed = 0;
  // a ~ U[25,100]^n, b = (2/5)Σaᵢ, x ∈ [0,100]^n (§6.1).
};

inline LinearDecisionProblem generate_instance(const KnapsackInstanceSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate_instance: n < 1");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> box(25.0, 100.0);
  Vector a(spec.n);
  for (int i = 0; i < spec.n; ++i) a[i] = box(rng);
  Matrix A(1, spec.n);
  A.row(0) = a;
  Vector b(1);
  b[0] = 0.4 * a.sum();
  return LinearDecisionProblem(A, b, Vector::Zero(spec.n),
                               Vector::Constant(spec.n, 100.0));
}

enum class DataVariant { Gaussian, GaussianInverseMV, HeavyTail };

inline const char* to_string(DataVariant v) {
  switch (v) {
    case DataVariant::Gaussian: return "gaussian";
    case DataVariant::GaussianInverseMV: return "inverse";
    default: return "heavytail";
  }
}

struct DataModelSpec {
  DataVariant variant = DataVariant::Gaussian;
  int n = 20;
  int m = 1000;
  double split = 0.8;
  unsigned long long seed = 0;
};

struct DataSet {
  std::vector<Vector> train, test;
};

inline DataSet sample_data(const DataModelSpec& spec) {
  if (spec.m < 2) throw std::invalid_argument("sample_data: m < 2");
  if (!(spec.split > 0.0 && spec.split < 1.0))
    throw std::invalid_argument("sample_data: split outside (0,1)");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = spec.n;

  std::vector<Vector> samples;
  samples.reserve(spec.m);
  if (spec.variant == DataVariant::HeavyTail) {
    // i.i.d. Pareto(scale 1, shape 1.5) per coordinate, plus the all-ones
    // vector: inverse CDF U^{-1/1.5} + 1.
    for (int s = 0; s < spec.m; ++s) {
      Vector p(n);
      for (int i = 0; i < n; ++i)
        p[i] = std::pow(1.0 - unif(rng), -1.0 / 1.5) + 1.0;
      samples.push_back(p);
    }
  } else {
    Vector mu(n), sd(n);
    for (int i = 0; i < n; ++i) mu[i] = 50.0 * unif(rng);
    for (int i = 0; i < n; ++i) {
      const double cap = spec.variant == DataVariant::Gaussian ? mu[i] / 2.0 : 50.0 - mu[i];
      sd[i] = cap * unif(rng);
    }
    // Random orthonormal basis u¹..uⁿ from the QR factor of a Gaussian
    // matrix; Σ = Σᵢ σᵢ² uⁱ(uⁱ)ᵀ, sampled as μ + Σᵢ σᵢ zᵢ uⁱ.
    Matrix raw(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raw(i, j) = gauss(rng);
    const Matrix U = Eigen::HouseholderQR<Matrix>(raw).householderQ();
    for (int s = 0; s < spec.m; ++s) {
      Vector p = mu;
      for (int i = 0; i < n; ++i) p += sd[i] * gauss(rng) * U.col(i);
      samples.push_back(p);
    }
  }

  DataSet out;
  const int ntrain = static_cast<int>(std::floor(spec.split * spec.m));
  out.train.assign(samples.begin(), samples.begin() + ntrain);
  out.test.assign(samples.begin() + ntrain, samples.end());
  return out;
}

struct MethodGrid {
  std::vector<double> ro_theta{0.0, 0.02, 0.04, 0.06, 0.08};
  std::vector<double> rod_theta{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> sat_beta{1.2, 1.4, 1.6, 1.8, 2.0};
  std::vector<double> reg_theta{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> garo_q{0.0, 0.5, 1.0, 1.5, 2.0};
  int grid_size = 100; // T+1 equidistant radii on Γ
};

struct TradeoffRow {
  int instance = 0, data = 0;
  std::string method;
  double param = 0.0;
  double mean = 0.0, worst = 0.0, q90 = 0.0;
  double runtime_s = 0.0;
};

struct GuaranteeSample {
  std::string method;
  double param = 0.0;
  double gamma_norm = 0.0;
  double bound = 0.0; // +inf encodes a vacuous guarantee
};

struct ExperimentReport {
  std::vector<TradeoffRow> rows;
  std::vector<GuaranteeSample> guarantees;
  std::vector<std::string> failures; // per-cell log of skipped method runs
};

struct SuiteConfig {
  int n = 20;
  int m = 1000;
  int num_instances = 3;
  int num_datasets = 3;
  DataVariant variant = DataVariant::Gaussian;
  MethodGrid methods;
  unsigned long long master_seed = 1;
  int threads = 0; // 0: GARO_THREADS env var, else hardware concurrency
};

namespace detail {

inline unsigned long long mix_seed(unsigned long long a, unsigned long long b) {
  // splitmix64 finalizer over the combined key; cheap and well-spread
  unsigned long long z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct TestStats {
  double mean = 0.0, worst = 0.0, q90 = 0.0;
};

inline TestStats evaluate_on_test(const Vector& x, const std::vector<Vector>& test) {
  std::vector<double> objs;
  objs.reserve(test.size());
  for (const auto& p : test) objs.push_back(x.dot(p));
  std::sort(objs.begin(), objs.end());
  TestStats s;
  s.worst = objs.back();
  s.q90 = objs[static_cast<size_t>(
      std::max<long long>(0, static_cast<long long>(
                                 std::ceil(0.9 * static_cast<double>(objs.size()))) -
                                 1))];
  for (const double v : objs) s.mean += v;
  s.mean /= static_cast<double>(objs.size());
  return s;
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GARO_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

} // namespace detail

inline ExperimentReport run_suite(const SuiteConfig& cfg) {
  if (cfg.num_instances < 1 || cfg.num_datasets < 1)
    throw std::invalid_argument("run_suite: empty cross product");

  struct Cell {
    int instance, data;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < cfg.num_instances; ++i)
    for (int d = 0; d < cfg.num_datasets; ++d) cells.push_back({i, d});

  // γ_norm = 1 corresponds to the largest γ_{0.99} across cells, so the
  // calibrations are computed up front (cheap relative to the solves).
  std::vector<LinearDecisionProblem> instances;
  for (int i = 0; i < cfg.num_instances; ++i)
    instances.push_back(
        generate_instance({cfg.n, detail::mix_seed(cfg.master_seed, 1000 + i)}));
  std::vector<DataSet> datasets;
  for (int d = 0; d < cfg.num_datasets; ++d)
    datasets.push_back(sample_data({cfg.variant, cfg.n, cfg.m, 0.8,
                                    detail::mix_seed(cfg.master_seed, 2000 + d)}));

  std::vector<EllipsoidalModel> models(datasets.size());
  std::vector<double> gamma99(datasets.size());
  double gamma_max_global = 0.0;
  for (size_t d = 0; d < datasets.size(); ++d) {
    const auto& train = datasets[d].train;
    Vector p0 = Vector::Zero(cfg.n);
    for (const auto& p : train) p0 += p;
    p0 /= static_cast<double>(train.size());
    Matrix cov = Matrix::Zero(cfg.n, cfg.n);
    for (const auto& p : train) {
      const Vector dlt = p - p0;
      cov += dlt * dlt.transpose();
    }
    cov /= static_cast<double>(train.size() - 1);
    models[d] = {p0, regularize_covariance(cov)};
    gamma99[d] = calibrate_gamma(UncertaintyModel(models[d]), train, 0.99);
    gamma_max_global = std::max(gamma_max_global, gamma99[d]);
  }

  ExperimentReport report;
  std::mutex report_mutex;
  std::atomic<size_t> next_cell{0};

  const auto worker = [&]() {
    for (;;) {
      const size_t ci = next_cell.fetch_add(1);
      if (ci >= cells.size()) return;
      const auto [ii, di] = cells[ci];
      const auto& prob = instances[static_cast<size_t>(ii)];
      const auto& ds = datasets[static_cast<size_t>(di)];
      const UncertaintyModel model = models[static_cast<size_t>(di)];
      const double g99 = gamma99[static_cast<size_t>(di)];

      std::vector<double> grid;
      for (int t = 0; t < cfg.methods.grid_size; ++t)
        grid.push_back(g99 * static_cast<double>(t) / (cfg.methods.grid_size - 1));

      std::vector<TradeoffRow> rows;
      std::vector<GuaranteeSample> bounds;
      std::vector<std::string> fails;
      RobustOracleCache cache(prob, model);

      const auto guard_grid = [&](const std::string& method, double param,
                                  const std::function<double(double)>& bound) {
        for (int t = 0; t < 100; ++t) {
          const double gn = static_cast<double>(t) / 99.0;
          bounds.push_back({method, param, gn, bound(gn * gamma_max_global)});
        }
      };
      const auto run = [&](const std::string& method, double param,
                           const std::function<Vector()>& solve_fn,
                           const std::function<double(const Vector&, double)>& bound_fn) {
        const auto t0 = std::chrono::steady_clock::now();
        Vector x;
        try {
          x = solve_fn();
        } catch (const std::exception& e) {
          std::ostringstream os;
          os << "instance=" << ii << " data=" << di << " " << method << "(" << param
             << "): " << e.what();
          fails.push_back(os.str());
          return;
        }
        const double rt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto stats = detail::evaluate_on_test(x, ds.test);
        rows.push_back({ii, di, method, param, stats.mean, stats.worst, stats.q90, rt});
        if (bound_fn) guard_grid(method, param, [&, x](double g) { return bound_fn(x, g); });
      };

      for (const double th : cfg.methods.ro_theta) {
        double value = 0.0;
        run(
            "ro", th,
            [&]() {
              auto [x, v] = robust_oracle(prob, model, th * g99);
              value = v;
              return x;
            },
            // All-or-nothing guarantee (§6.2): opt(RO(θ)) inside θγ_{0.99}.
            [&, th](const Vector&, double g) { return g <= th * g99 ? value : kInf; });
      }
      for (const double th : cfg.methods.rod_theta) {
        run(
            "ro_d", th,
            [&]() {
              auto scen = filter_scenarios(std::get<EllipsoidalModel>(model), ds.train,
                                           th * g99);
              if (scen.empty()) scen.push_back(detail::wc_p0(model)); // nominal fallback
              return solve_ro_discrete(prob, scen).first;
            },
            nullptr); // training-set-only guarantee, no out-of-sample curve
      }
      for (const double beta : cfg.methods.sat_beta) {
        double alpha_sat = 0.0, f0 = 0.0;
        run(
            "sat", beta,
            [&]() {
              const auto res = solve_satisficing(prob, model, {beta, grid}, &cache);
              if (res.status != SolveStatus::Optimal)
                throw std::runtime_error(std::string("satisficing: ") + to_string(res.status));
              alpha_sat = res.alpha;
              f0 = res.f0;
              return res.x;
            },
            [&](const Vector&, double g) { return f0 + alpha_sat * g; });
      }
      {
        // m_p precompute over the largest scenario set; θ sweeps reuse it.
        std::vector<Vector> big;
        std::vector<double> big_m;
        const double th_max =
            cfg.methods.reg_theta.empty()
                ? 0.0
                : *std::max_element(cfg.methods.reg_theta.begin(), cfg.methods.reg_theta.end());
        try {
          big = filter_scenarios(std::get<EllipsoidalModel>(model), ds.train, th_max * g99);
          for (const auto& p : big) big_m.push_back(nominal_optimum(prob, p));
        } catch (const std::exception& e) {
          fails.push_back(std::string("reg precompute: ") + e.what());
        }
        const Eigen::LDLT<Matrix> ldlt(std::get<EllipsoidalModel>(model).sigma);
        const Vector p0 = detail::wc_p0(model);
        for (const double th : cfg.methods.reg_theta) {
          run(
              "reg", th,
              [&]() {
                std::vector<Vector> scen;
                std::vector<double> m;
                for (size_t k = 0; k < big.size(); ++k) {
                  const Vector dlt = big[k] - p0;
                  if (dlt.dot(ldlt.solve(dlt)) <= th * g99) {
                    scen.push_back(big[k]);
                    m.push_back(big_m[k]);
                  }
                }
                if (scen.empty()) { // nominal fallback as above
                  scen.push_back(p0);
                  m.push_back(nominal_optimum(prob, p0));
                }
                return solve_regret_discrete(prob, scen, m).first;
              },
              nullptr);
        }
      }
      for (const double q : cfg.methods.garo_q) {
        double alpha = 0.0;
        run(
            "garo", q,
            [&]() {
              const auto sol =
                  solve_garo_discretized(prob, model, grid, PowerRate{q}, &cache);
              alpha = sol.alpha;
              return sol.x;
            },
            // §6.3: xᵀp* ≤ v*_wc(γ*) + α(1+γ*)^q
            [&, q](const Vector&, double g) {
              return cache(std::min(g, g99)) + alpha * std::pow(1.0 + g, q);
            });
      }

      std::lock_guard<std::mutex> lock(report_mutex);
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
      report.guarantees.insert(report.guarantees.end(), bounds.begin(), bounds.end());
      report.failures.insert(report.failures.end(), fails.begin(), fails.end());
    }
  };

  const int nthreads = std::min<int>(detail::resolve_threads(cfg.threads),
                                     static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Deterministic output order regardless of thread interleaving.
  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.instance, a.data, a.method, a.param) <
           std::tie(b.instance, b.data, b.method, b.param);
  });
  // Guarantee curves can come from several cells: keep the worst (largest)
  // bound per (method, param, γ) so the published curve holds everywhere.
  std::sort(report.guarantees.begin(), report.guarantees.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.method, a.param, a.gamma_norm, a.bound) <
                     std::tie(b.method, b.param, b.gamma_norm, b.bound);
            });
  std::vector<GuaranteeSample> dedup;
  for (const auto& g : report.guarantees) {
    if (!dedup.empty() && dedup.back().method == g.method && dedup.back().param == g.param &&
        dedup.back().gamma_norm == g.gamma_norm)
      dedup.back().bound = std::max(dedup.back().bound, g.bound);
    else
      dedup.push_back(g);
  }
  report.guarantees = std::move(dedup);
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

namespace detail {

inline std::string format_float(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace detail

/// Writes tradeoff.csv and guarantees.csv (UTF-8, '.' decimal separator,
/// 17 significant digits, rows already in lexicographic key order).
inline void emit_csv(const ExperimentReport& report, const std::string& out_dir) {
  {
    const std::string path = out_dir + "/tradeoff.csv";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("emit_csv: cannot write " + path);
    f << "instance,data,method,param,mean,worst,q90,runtime_s\n";
    for (const auto& r : report.rows)
      f << r.instance << ',' << r.data << ',' << r.method << ','
        << detail::format_float(r.param) << ',' << detail::format_float(r.mean) << ','
        << detail::format_float(r.worst) << ',' << detail::format_float(r.q90) << ','
        << detail::format_float(r.runtime_s) << '\n';
    if (!f.good()) throw std::runtime_error("emit_csv: write failed for " + path);
  }
  {
    const std::string path = out_dir + "/guarantees.csv";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("emit_csv: cannot write " + path);
    f << "method,param,gamma_norm,bound\n";
    for (const auto& g : report.guarantees)
      f << g.method << ',' << detail::format_float(g.param) << ','
        << detail::format_float(g.gamma_norm) << ',' << detail::format_float(g.bound) << '\n';
    if (!f.good()) throw std::runtime_error("emit_csv: write failed for " + path);
  }
}

} // namespace garo

#endif
