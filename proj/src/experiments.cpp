#include "fd/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fd/parallel.hpp"
#include "fd/rng.hpp"

namespace fd {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RegionReport run_region(const ExperimentConfig& config, const fs::path& out_dir,
                        unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const std::string hash = config_hash(config);

  RegionReport report;
  json mode_timings = json::object();
  for (std::size_t mi = 0; mi < config.region.csi_modes.size(); ++mi) {
    const std::string& mode = config.region.csi_modes[mi];
    const auto tm = std::chrono::steady_clock::now();
    Problem problem = make_problem(config, mode);
    if (mi == 0) report.ne = hub_nash(problem);
    RegionResult region = pareto_sweep(problem, config.lambda_grid, config.restarts,
                                       Rng::derive(config.seed, mi), config.max_sweeps, threads);
    mode_timings[mode] = seconds_since(tm);
    report.regions.emplace_back(mode, std::move(region));
  }

  std::ostringstream csv;
  csv << "config_hash,seed,csi_mode,lambda,u1,u2,w,sweeps,restart_index_of_best\n";
  for (const auto& [mode, region] : report.regions)
    for (std::size_t i = 0; i < region.points.size(); ++i) {
      const SolveResult& p = region.points[i];
      csv << hash << ',' << config.seed << ',' << mode << ',' << fmt(p.lambda) << ','
          << fmt(p.u1) << ',' << fmt(p.u2) << ',' << fmt(p.w) << ',' << p.sweeps << ','
          << region.best_restart[i] << '\n';
    }
  write_text(out_dir / "region.csv", csv.str());

  std::ostringstream hull;
  hull << "config_hash,seed,csi_mode,vertex_index,u1,u2\n";
  for (const auto& [mode, region] : report.regions)
    for (std::size_t k = 0; k < region.hull.size(); ++k) {
      const SolveResult& p = region.points[region.hull[k]];
      hull << hash << ',' << config.seed << ',' << mode << ',' << k << ',' << fmt(p.u1) << ','
           << fmt(p.u2) << '\n';
    }
  write_text(out_dir / "hull.csv", hull.str());

  json summary;
  summary["experiment"] = "region";
  summary["config"] = to_json(config);
  summary["config_hash"] = hash;
  summary["seed"] = config.seed;
  summary["ne"] = {{"u1", report.ne.u1}, {"u2", report.ne.u2}};
  json modes = json::array();
  for (const auto& [mode, region] : report.regions) {
    bool all_converged = true;
    for (const auto& p : region.points) all_converged = all_converged && p.converged;
    modes.push_back({{"csi_mode", mode},
                     {"all_converged", all_converged},
                     {"hull_vertices", region.hull.size()}});
  }
  summary["modes"] = modes;
  write_json(out_dir / "summary.json", summary);
  write_json(out_dir / "timings.json",
             {{"per_mode_s", mode_timings}, {"total_s", seconds_since(t0)}});
  return report;
}

AlphaSweepReport run_alpha_sweep(const ExperimentConfig& config, const fs::path& out_dir,
                                 unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const std::string hash = config_hash(config);
  const auto& sweep = config.alpha_sweep;
  if (sweep.alphas.empty()) throw ConfigError("alpha sweep: empty alpha list");
  for (double a : sweep.alphas)
    if (!(a > 0.0)) throw ConfigError("alpha sweep: alpha must be > 0");

  AlphaSweepReport report;
  const std::size_t n_rows = sweep.r_values.size() * sweep.alphas.size();
  report.rows.resize(n_rows);
  parallel_for(n_rows, threads, [&](std::size_t i) {
    const double r = sweep.r_values[i / sweep.alphas.size()];
    const double alpha = sweep.alphas[i % sweep.alphas.size()];
    Problem problem = make_problem(config, "local", alpha, r);
    auto [solved, index] = solve_lambda(problem, 0.5, config.restarts,
                                        Rng::derive(config.seed, i), config.max_sweeps);
    const NashBaseline ne = hub_nash(problem);
    AlphaSweepRow row;
    row.r = r;
    row.alpha = alpha;
    row.u_advanced = solved.w;  // = (u1 + u2) / 2 at lambda = 1/2
    row.u_ne = 0.5 * (ne.u1 + ne.u2);
    row.converged = solved.converged;
    report.rows[i] = row;
  });

  std::ostringstream csv;
  csv << "config_hash,seed,r,alpha,inv_alpha,u_advanced,u_ne\n";
  for (const auto& row : report.rows)
    csv << hash << ',' << config.seed << ',' << fmt(row.r) << ',' << fmt(row.alpha) << ','
        << fmt(1.0 / row.alpha) << ',' << fmt(row.u_advanced) << ',' << fmt(row.u_ne) << '\n';
  write_text(out_dir / "alpha_sweep.csv", csv.str());

  bool all_converged = true;
  for (const auto& row : report.rows) all_converged = all_converged && row.converged;
  json summary;
  summary["experiment"] = "alpha_sweep";
  summary["config"] = to_json(config);
  summary["config_hash"] = hash;
  summary["seed"] = config.seed;
  summary["rows"] = report.rows.size();
  summary["all_converged"] = all_converged;
  write_json(out_dir / "summary.json", summary);
  write_json(out_dir / "timings.json", {{"total_s", seconds_since(t0)}});
  return report;
}

NetworkReport run_network(const ExperimentConfig& config, const fs::path& out_dir,
                          unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const std::string hash = config_hash(config);
  const auto& net = config.network;
  if (net.fractions.empty()) throw ConfigError("network: empty fraction list");

  // advanced nodes play the lambda = 1/2 local-CSI policy for their role
  Problem problem = make_problem(config, "local");
  NetworkReport report;
  auto [solved, index] = solve_lambda(problem, 0.5, config.restarts,
                                      Rng::derive(config.seed, 0), config.max_sweeps);
  report.advanced = std::move(solved);
  report.ne = hub_nash(problem);

  PopulationContext ctx;
  ctx.problem = &problem;
  ctx.advanced1 = report.advanced.f1;
  ctx.advanced2 = report.advanced.f2;
  ctx.ne_action = report.ne.a1;

  const auto interactions =
      build_network(net.n_nodes, net.n_interactions, Rng::derive(config.seed, 1));
  report.stats = fraction_sweep(interactions, net.n_nodes, net.fractions, net.replications,
                                ctx, Rng::derive(config.seed, 2), threads);
  report.fit = fit_line(report.stats);

  std::ostringstream csv;
  csv << "config_hash,seed,fraction,mean_sum_utility,min,max,replications\n";
  for (const auto& st : report.stats)
    csv << hash << ',' << config.seed << ',' << fmt(st.fraction) << ',' << fmt(st.mean) << ','
        << fmt(st.min) << ',' << fmt(st.max) << ',' << st.replications << '\n';
  write_text(out_dir / "network.csv", csv.str());

  json summary;
  summary["experiment"] = "network";
  summary["config"] = to_json(config);
  summary["config_hash"] = hash;
  summary["seed"] = config.seed;
  summary["advanced_converged"] = report.advanced.converged;
  summary["advanced_point"] = {{"u1", report.advanced.u1}, {"u2", report.advanced.u2}};
  summary["ne_point"] = {{"u1", report.ne.u1}, {"u2", report.ne.u2}};
  summary["linear_fit"] = {{"slope", report.fit.slope},
                           {"intercept", report.fit.intercept},
                           {"r2", report.fit.r2}};
  write_json(out_dir / "summary.json", summary);
  write_json(out_dir / "timings.json", {{"total_s", seconds_since(t0)}});
  return report;
}

SolveReport run_solve(const ExperimentConfig& config, double lambda, const fs::path& out_dir,
                      unsigned threads) {
  (void)threads;  // restarts run sequentially; kept for interface symmetry
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const std::string hash = config_hash(config);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("solve: lambda must lie in [0, 1]");

  Problem problem = make_problem(config, config.csi);
  SolveReport report;
  report.csi_mode = config.csi;
  auto [solved, index] = solve_lambda(problem, lambda, config.restarts,
                                      Rng::derive(config.seed, 0), config.max_sweeps);
  report.result = std::move(solved);
  report.restart_index = index;

  std::ostringstream csv;
  csv << "config_hash,seed,csi_mode,lambda,u1,u2,w,sweeps,restart_index_of_best\n";
  csv << hash << ',' << config.seed << ',' << report.csi_mode << ','
      << fmt(report.result.lambda) << ',' << fmt(report.result.u1) << ','
      << fmt(report.result.u2) << ',' << fmt(report.result.w) << ',' << report.result.sweeps
      << ',' << report.restart_index << '\n';
  write_text(out_dir / "solve.csv", csv.str());

  json summary;
  summary["experiment"] = "solve";
  summary["config"] = to_json(config);
  summary["config_hash"] = hash;
  summary["seed"] = config.seed;
  summary["lambda"] = lambda;
  summary["converged"] = report.result.converged;
  summary["w"] = report.result.w;
  summary["u1"] = report.result.u1;
  summary["u2"] = report.result.u2;
  write_json(out_dir / "summary.json", summary);
  write_json(out_dir / "timings.json", {{"total_s", seconds_since(t0)}});
  return report;
}

namespace {

// exact-size desk instance; grids shared across the four links, marginals not
Problem desk_problem(std::uint64_t seed, const std::string& csi_mode, std::size_t n,
                     std::size_t m, std::size_t lottery_size) {
  Rng rng(seed);
  const double g_min = 0.05 + 0.5 * rng.next_double();
  const double g_max = g_min + 0.5 + 4.0 * rng.next_double();
  const double p_min_db = -10.0 + 5.0 * rng.next_double();
  const double p_max_db = p_min_db + 5.0 + 15.0 * rng.next_double();

  UtilityParams params;
  params.alpha = 0.3 * rng.next_double();
  params.sigma2 = 0.5 + rng.next_double();
  params.phi = Efficiency::exp_ratio_from_rate(1.0);

  const GainGrid grid = build_gain_grid(g_min, g_max, n);
  GameModel model(grid, grid, grid, grid, build_power_grid(p_min_db, p_max_db, m), params);

  auto random_pmf = [&](std::size_t size) {
    std::vector<double> pmf(size);
    double sum = 0.0;
    for (auto& v : pmf) {
      v = rng.next_exponential();
      sum += v;
    }
    for (auto& v : pmf) v /= sum;
    return pmf;
  };
  StateDistribution dist = product_state_distribution(random_pmf(n), random_pmf(n),
                                                      random_pmf(n), random_pmf(n));

  ObservationStructure obs;
  if (csi_mode == "global") {
    obs = global_csi(model);
  } else if (csi_mode == "local") {
    obs = local_csi(model);
  } else if (csi_mode == "blind") {
    obs = blind_csi(model);
  } else if (csi_mode == "kernel") {
    const std::size_t n_signals = 2;
    std::vector<std::vector<double>> k1, k2;
    for (std::size_t x0 = 0; x0 < model.num_states(); ++x0) {
      k1.push_back(random_pmf(n_signals));
      k2.push_back(random_pmf(n_signals));
    }
    obs = product_kernel(std::move(k1), std::move(k2));
  } else {
    throw std::invalid_argument("desk instance: unknown csi mode " + csi_mode);
  }
  return Problem(std::move(model), std::move(dist), std::move(obs),
                 uniform_lottery(lottery_size));
}

}  // namespace

Problem random_desk_problem(std::uint64_t seed, const std::string& csi_mode,
                            std::size_t max_gain_levels, std::size_t max_power_levels,
                            std::size_t max_lottery) {
  Rng rng(Rng::derive(seed, 0xde5cULL));
  const std::size_t n =
      2 + (max_gain_levels > 2
               ? rng.next_below(static_cast<std::uint32_t>(max_gain_levels - 1))
               : 0);
  const std::size_t m =
      2 + (max_power_levels > 2
               ? rng.next_below(static_cast<std::uint32_t>(max_power_levels - 1))
               : 0);
  const std::size_t v = 1 + rng.next_below(static_cast<std::uint32_t>(max_lottery));
  return desk_problem(rng.next_u64(), csi_mode, n, m, v);
}

VerifyReport run_oracle_suite(std::uint64_t seed, unsigned threads) {
  VerifyReport report;
  const char* desk_modes[3] = {"global", "local", "blind"};

  // normalization of the induced joint on 100 random desk instances, with the
  // BR traces kept for the convergence check
  auto t = std::chrono::steady_clock::now();
  std::vector<std::string> norm_failures(100);
  std::vector<std::vector<double>> traces(100);
  std::vector<bool> trace_converged(100, false);
  std::vector<std::size_t> trace_sweeps(100, 0);
  parallel_for(100, threads, [&](std::size_t i) {
    const std::string mode = desk_modes[i % 3];
    Problem problem = random_desk_problem(Rng::derive(seed, i), mode);
    Rng rng(Rng::derive(seed, i, 17));
    const DecisionPolicy f1 = problem.random_policy(1, rng);
    const DecisionPolicy f2 = problem.random_policy(2, rng);
    const double total = induced_joint(problem, f1, f2).total();
    if (std::abs(total - 1.0) > 1e-12)
      norm_failures[i] = "instance " + std::to_string(i) + ": mass " + fmt(total);
    const SolveResult run = sequential_best_response(problem, 0.5, f1, f2, 100);
    traces[i] = run.trace;
    trace_converged[i] = run.converged;
    trace_sweeps[i] = run.sweeps;
  });
  {
    VerifyCheck check{"normalization_100_desk_instances", true, "", 0.0};
    for (const auto& f : norm_failures)
      if (!f.empty()) {
        check.pass = false;
        check.detail = f;
        break;
      }
    check.seconds = seconds_since(t);
    report.checks.push_back(check);
  }

  // fixed 24-case oracle suite: (|V|, csi) x lambda
  t = std::chrono::steady_clock::now();
  const double lambdas[4] = {0.0, 0.3, 0.5, 1.0};
  struct SuiteCase {
    double w_star = 0.0;
    double w_br = 0.0;
    bool sound = true;
  };
  std::map<std::pair<std::size_t, std::string>, std::vector<double>> w_star_by_instance;
  std::vector<SuiteCase> cases;
  std::vector<Problem> vertex_problems;  // one per (|V|, csi), for vertex sufficiency
  std::vector<double> vertex_w_star;

  for (std::size_t lv = 1; lv <= 2; ++lv) {
    for (const char* mode : desk_modes) {
      Problem problem = desk_problem(Rng::derive(seed, 0xabc, lv), mode, 2, 2, lv);
      std::vector<double> w_stars;
      for (double lambda : lambdas) {
        const SolveResult oracle = exhaustive_search(problem, lambda);
        auto [br, index] = solve_lambda(problem, lambda, 16,
                                        Rng::derive(seed, lv, lambda == 0.3 ? 3 : lambda == 0.5 ? 5 : lambda == 1.0 ? 10 : 0),
                                        100);
        SuiteCase c;
        c.w_star = oracle.w;
        c.w_br = br.w;
        c.sound = br.w <= oracle.w + 1e-12;
        cases.push_back(c);
        w_stars.push_back(oracle.w);
        traces.push_back(br.trace);
        trace_converged.push_back(br.converged);
        trace_sweeps.push_back(br.sweeps);
        if (lambda == 0.3) {
          vertex_w_star.push_back(oracle.w);
        }
      }
      w_star_by_instance[{lv, mode}] = w_stars;
      vertex_problems.push_back(std::move(problem));
    }
  }
  {
    VerifyCheck sound{"oracle_soundness_24_cases", true, "", 0.0};
    std::size_t matches = 0;
    for (const auto& c : cases) {
      if (!c.sound) {
        sound.pass = false;
        sound.detail = "BR exceeded the exhaustive optimum";
      }
      if (std::abs(c.w_br - c.w_star) <= 1e-9) ++matches;
    }
    report.oracle_match_rate = static_cast<double>(matches) / static_cast<double>(cases.size());
    sound.seconds = seconds_since(t);
    report.checks.push_back(sound);

    VerifyCheck match{"oracle_match_rate_ge_90pct", report.oracle_match_rate >= 0.9,
                      "match rate " + fmt(report.oracle_match_rate), sound.seconds};
    report.checks.push_back(match);
  }

  // monotone convergence of every collected trace
  t = std::chrono::steady_clock::now();
  {
    VerifyCheck check{"monotone_convergence_all_traces", true, "", 0.0};
    for (std::size_t i = 0; i < traces.size(); ++i) {
      for (std::size_t k = 1; k < traces[i].size(); ++k)
        if (traces[i][k] < traces[i][k - 1] - 1e-12) {
          check.pass = false;
          check.detail = "decreasing trace in run " + std::to_string(i);
        }
      if (!trace_converged[i] || trace_sweeps[i] > 100) {
        check.pass = false;
        check.detail = "run " + std::to_string(i) + " did not converge within 100 sweeps";
      }
    }
    check.seconds = seconds_since(t);
    report.checks.push_back(check);
  }

  // vertex sufficiency: deterministic optimum vs 1000 random stochastic pairs
  t = std::chrono::steady_clock::now();
  {
    VerifyCheck check{"vertex_sufficiency_6x1000", true, "", 0.0};
    for (std::size_t i = 0; i < vertex_problems.size(); ++i) {
      const Problem& problem = vertex_problems[i];
      Rng rng(Rng::derive(seed, 0x5417, i));
      for (std::size_t k = 0; k < 1000; ++k) {
        const StochasticPolicy p1 = random_stochastic_policy(problem, 1, rng);
        const StochasticPolicy p2 = random_stochastic_policy(problem, 2, rng);
        const double w = evaluate_stochastic_pair(problem, 0.3, p1, p2);
        if (w > vertex_w_star[i] + 1e-12) {
          check.pass = false;
          check.detail = "stochastic pair beat the deterministic optimum";
        }
      }
    }
    check.seconds = seconds_since(t);
    report.checks.push_back(check);
  }

  // information ordering of the exhaustive optima
  t = std::chrono::steady_clock::now();
  {
    VerifyCheck check{"information_ordering_global_local_blind", true, "", 0.0};
    for (std::size_t lv = 1; lv <= 2; ++lv) {
      const auto& wg = w_star_by_instance[{lv, "global"}];
      const auto& wl = w_star_by_instance[{lv, "local"}];
      const auto& wb = w_star_by_instance[{lv, "blind"}];
      for (std::size_t k = 0; k < 4; ++k) {
        if (wg[k] < wl[k] - 1e-12 || wl[k] < wb[k] - 1e-12) {
          check.pass = false;
          check.detail = "ordering violated at lambda index " + std::to_string(k);
        }
      }
    }
    check.seconds = seconds_since(t);
    report.checks.push_back(check);
  }

  return report;
}

}  // namespace fd
