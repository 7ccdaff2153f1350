#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "nsm/harness.hpp"

#include <CLI11.hpp>

namespace nsm {
namespace {

namespace fs = std::filesystem;

void write_outputs(const ExperimentReport& report, const std::string& out_prefix) {
  if (out_prefix.empty()) return;
  const fs::path csv_path = out_prefix + ".csv";
  const fs::path json_path = out_prefix + ".json";
  std::ofstream csv(csv_path);
  if (!csv) throw ConfigError("cannot write " + csv_path.string());
  report.write_csv(csv);
  std::ofstream js(json_path);
  if (!js) throw ConfigError("cannot write " + json_path.string());
  js << report.summary_json().dump(2) << "\n";
  std::printf("wrote %s and %s\n", csv_path.c_str(), json_path.c_str());
}

void print_report(const ExperimentReport& report) {
  std::printf("%-10s %8s %6s %4s %14s %14s %8s %12s\n", "algo", "seed", "n", "k",
              "value", "baseline", "ratio", "queries");
  for (const RunRow& r : report.rows)
    std::printf("%-10s %8llu %6u %4u %14.4f %14.4f %8.4f %12llu\n", r.algo.c_str(),
                static_cast<unsigned long long>(r.seed), r.n, r.k, r.value,
                r.baseline, r.ratio, static_cast<unsigned long long>(r.queries));
  std::printf("aggregate: mean ratio %.4f, median ratio %.4f, min ratio %.4f, "
              "mean queries %.1f\n",
              report.mean_ratio, report.median_ratio, report.min_ratio,
              report.mean_queries);
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, unsigned count) {
  std::vector<std::uint64_t> seeds(count);
  for (unsigned i = 0; i < count; ++i) seeds[i] = first + i;
  return seeds;
}

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                std::optional<std::uint64_t> budget, const std::string& out) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  if (seed) cfg.seeds = {*seed};
  if (budget) cfg.algo.caps.enumeration_budget = *budget;
  ExperimentReport report = run_experiment(cfg);
  print_report(report);
  write_outputs(report, out);
  return 0;
}

int check_command(const std::string& instance_path, unsigned limit) {
  const SetFunction f = SetFunction::load(instance_path);
  const CheckResult mono = check_monotone(f, limit);
  const CheckResult sub = check_submodular(f, limit);
  std::printf("instance: kind=%s n=%u\n", f.kind_name(), f.n());
  std::printf("monotone:   %s%s%s\n", mono.ok ? "yes" : "NO", mono.ok ? "" : "  ",
              mono.ok ? "" : mono.describe().c_str());
  std::printf("submodular: %s%s%s\n", sub.ok ? "yes" : "NO", sub.ok ? "" : "  ",
              sub.ok ? "" : sub.describe().c_str());
  return (mono.ok && sub.ok) ? 0 : 1;
}

int generate_command(const std::string& family, ElemId n, std::uint32_t universe,
                     unsigned max_items, unsigned k, unsigned b_sets, double eps,
                     double delta, double big, std::uint64_t seed,
                     const std::string& out) {
  std::optional<SetFunction> f;
  if (family == "additive") f = random_additive(n, seed);
  else if (family == "coverage") f = random_coverage(n, universe, max_items, seed);
  else if (family == "unit_demand") f = random_unit_demand(n, seed);
  else if (family == "greedy_failure") f = make_noisy_greedy_failure(n);
  else if (family == "greedy_trap") f = make_greedy_trap(b_sets, eps).f;
  else if (family == "tinyk_f1") f = make_tinyk_pair(n, k).f1;
  else if (family == "tinyk_f2") f = make_tinyk_pair(n, k).f2;
  else if (family == "adversarial_f1") f = make_adversarial_pair(n, delta, eps, seed).f1;
  else if (family == "adversarial_f2") f = make_adversarial_pair(n, delta, eps, seed).f2;
  else if (family == "unit_demand_correlated") f = make_unit_demand_correlated(n, big).f;
  else throw ConfigError("unknown family \"" + family + "\"");
  if (out.empty()) {
    std::cout << f->to_json().dump(2) << "\n";
  } else {
    f->save(out);
    std::printf("wrote %s (kind=%s, n=%u)\n", out.c_str(), f->kind_name(), f->n());
  }
  return 0;
}

int compare_command(const std::string& instance_path, unsigned k, double eps,
                    double noise_eps, unsigned num_seeds, std::uint64_t first_seed,
                    std::optional<std::uint64_t> budget, unsigned pool,
                    const std::string& out) {
  const SetFunction f = SetFunction::load(instance_path);
  NoiseConfig noise;
  if (noise_eps > 0) noise.dist = NoiseDistribution::unit_uniform(noise_eps);

  ExperimentConfig cfg;
  cfg.instance = f;
  cfg.noise = noise;
  cfg.algo.k = k;
  cfg.algo.eps = eps;
  cfg.algo.caps.pool = pool;
  if (budget) cfg.algo.caps.enumeration_budget = *budget;
  cfg.seeds = seed_range(first_seed, num_seeds);
  cfg.baseline = Baseline::brute_force;

  ExperimentReport all;
  for (const std::string& algo :
       {std::string("greedy"), std::string("smooth"), std::string("slick"),
        std::string("sm"), std::string("whp_small")}) {
    cfg.algorithm = algo;
    try {
      ExperimentReport rep = run_experiment(cfg);
      all.rows.insert(all.rows.end(), rep.rows.begin(), rep.rows.end());
    } catch (const ConfigError& e) {
      std::printf("%-10s skipped: %s\n", algo.c_str(), e.what());
    } catch (const BudgetError& e) {
      std::printf("%-10s skipped: %s\n", algo.c_str(), e.what());
    }
  }
  all.finalize();
  print_report(all);
  write_outputs(all, out);
  return 0;
}

int scenario_command(const std::string& name, ElemId n, double noise_eps,
                     double delta, double eps, std::uint64_t query_budget,
                     const std::string& strategy, unsigned num_seeds,
                     std::uint64_t first_seed, const std::string& out) {
  const auto seeds = seed_range(first_seed, num_seeds);
  if (name == "greedy_failure") {
    ExperimentReport rep = scenario_greedy_failure(n, noise_eps, seeds);
    print_report(rep);
    write_outputs(rep, out);
    std::vector<double> g, s;
    for (const RunRow& r : rep.rows)
      (r.algo == "greedy" ? g : s).push_back(r.ratio);
    std::sort(g.begin(), g.end());
    std::sort(s.begin(), s.end());
    if (!g.empty())
      std::printf("median ratio: greedy %.4f, sm %.4f\n", g[g.size() / 2],
                  s[s.size() / 2]);
    return 0;
  }
  if (name == "adversarial") {
    AdversarialScenarioReport rep =
        scenario_adversarial(n, delta, eps, query_budget, strategy, seeds);
    std::printf("strategy %s on n=%u (delta=%g, eps=%g), budget %llu: "
                "%zu/%zu correct (%.4f)\n",
                rep.strategy.c_str(), n, delta, eps,
                static_cast<unsigned long long>(query_budget), rep.successes,
                rep.trials, rep.success_rate);
    if (!out.empty()) {
      ExperimentReport shim;
      shim.rows = rep.rows;
      shim.finalize();
      std::ofstream csv(out + ".csv");
      if (!csv) throw ConfigError("cannot write " + out + ".csv");
      shim.write_csv(csv);
      std::ofstream js(out + ".json");
      if (!js) throw ConfigError("cannot write " + out + ".json");
      js << rep.summary_json().dump(2) << "\n";
    }
    return 0;
  }
  throw ConfigError("unknown scenario \"" + name + "\"");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"noisy-oracle monotone submodular maximization harness"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out;
  std::optional<std::uint64_t> run_seed, run_budget;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", run_config, "experiment JSON")->required();
  run->add_option("--seed", run_seed, "replace the seed list with one seed");
  run->add_option("--budget", run_budget, "enumeration budget override");
  run->add_option("--out", run_out, "output prefix for CSV/JSON");

  // check
  std::string check_instance;
  unsigned check_limit = 12;
  auto* check = app.add_subcommand("check", "verify monotonicity/submodularity");
  check->add_option("instance", check_instance, "instance JSON")->required();
  check->add_option("--limit", check_limit, "exhaustive budget on n");

  // generate
  std::string gen_family, gen_out;
  ElemId gen_n = 8;
  std::uint32_t gen_universe = 16;
  unsigned gen_items = 4, gen_k = 2, gen_b = 4;
  double gen_eps = 0.25, gen_delta = 0.25, gen_big = 10.0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "write an instance JSON");
  gen->add_option("family", gen_family,
                  "additive|coverage|unit_demand|greedy_failure|greedy_trap|"
                  "tinyk_f1|tinyk_f2|adversarial_f1|adversarial_f2|"
                  "unit_demand_correlated")
      ->required();
  gen->add_option("--n", gen_n, "ground set size");
  gen->add_option("--universe", gen_universe, "coverage universe size");
  gen->add_option("--max-items", gen_items, "max items per coverage set");
  gen->add_option("--k", gen_k, "tiny-k parameter");
  gen->add_option("--b-sets", gen_b, "trap B family size");
  gen->add_option("--eps", gen_eps, "construction eps");
  gen->add_option("--delta", gen_delta, "construction delta");
  gen->add_option("--big", gen_big, "unit-demand special value");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  // compare
  std::string cmp_instance, cmp_out;
  unsigned cmp_k = 3, cmp_seeds = 5, cmp_pool = 0;
  double cmp_eps = 1.0, cmp_noise_eps = 0.0;
  std::uint64_t cmp_first = 1;
  std::optional<std::uint64_t> cmp_budget;
  auto* cmp = app.add_subcommand("compare", "multi-algorithm table on one instance");
  cmp->add_option("instance", cmp_instance, "instance JSON")->required();
  cmp->add_option("--k", cmp_k, "cardinality budget");
  cmp->add_option("--eps", cmp_eps, "algorithm accuracy parameter");
  cmp->add_option("--noise-eps", cmp_noise_eps, "uniform noise half-width (0 = exact)");
  cmp->add_option("--seeds", cmp_seeds, "number of seeds");
  cmp->add_option("--seed", cmp_first, "first seed");
  cmp->add_option("--pool", cmp_pool, "sampled-mean candidate pool (0 = full)");
  cmp->add_option("--budget", cmp_budget, "enumeration budget override");
  cmp->add_option("--out", cmp_out, "output prefix for CSV/JSON");

  // scenario
  std::string sc_name, sc_strategy = "random_kset", sc_out;
  ElemId sc_n = 4096;
  double sc_noise_eps = 0.1, sc_delta = 0.25, sc_eps = 0.25;
  std::uint64_t sc_budget = 100, sc_first = 1;
  unsigned sc_seeds = 50;
  auto* sc = app.add_subcommand("scenario", "hardness demonstrations");
  sc->add_option("name", sc_name, "greedy_failure|adversarial")->required();
  sc->add_option("--n", sc_n, "ground set size");
  sc->add_option("--noise-eps", sc_noise_eps, "uniform noise half-width");
  sc->add_option("--delta", sc_delta, "adversarial delta");
  sc->add_option("--eps", sc_eps, "adversarial eps");
  sc->add_option("--budget-queries", sc_budget, "query budget per trial");
  sc->add_option("--strategy", sc_strategy, "always_f2|random_singleton|random_kset");
  sc->add_option("--seeds", sc_seeds, "number of seeds");
  sc->add_option("--seed", sc_first, "first seed");
  sc->add_option("--out", sc_out, "output prefix for CSV/JSON");

  try {
    app.parse(argc, argv);
    if (*run) return run_command(run_config, run_seed, run_budget, run_out);
    if (*check) return check_command(check_instance, check_limit);
    if (*gen)
      return generate_command(gen_family, gen_n, gen_universe, gen_items, gen_k,
                              gen_b, gen_eps, gen_delta, gen_big, gen_seed, gen_out);
    if (*cmp)
      return compare_command(cmp_instance, cmp_k, cmp_eps, cmp_noise_eps, cmp_seeds,
                             cmp_first, cmp_budget, cmp_pool, cmp_out);
    if (*sc)
      return scenario_command(sc_name, sc_n, sc_noise_eps, sc_delta, sc_eps,
                              sc_budget, sc_strategy, sc_seeds, sc_first, sc_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return 3;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace nsm
