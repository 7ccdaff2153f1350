#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nsm/algorithms.hpp"

#include <json.hpp>

namespace nsm {

enum class Baseline { brute_force, exact_greedy, none };

const char* to_string(Baseline b);
Baseline baseline_from_string(const std::string& s);

/// Fully-validated experiment description; every field is checked before any
/// run starts and unknown JSON keys are rejected.
struct ExperimentConfig {
  SetFunction instance = SetFunction::additive({1.0});
  std::string algorithm = "greedy";
  AlgoConfig algo;
  NoiseConfig noise;
  std::vector<std::uint64_t> seeds = {1};
  Baseline baseline = Baseline::exact_greedy;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
};

struct RunRow {
  std::string algo;
  std::uint64_t seed = 0;
  unsigned n = 0, k = 0;
  double value = 0;
  double baseline = 0;   // NaN when no baseline was requested
  double ratio = 0;      // NaN when no baseline was requested
  std::uint64_t queries = 0;
  double ms = 0;
};

/// Per-seed rows plus aggregates.  CSV schema (stable):
///   algo,seed,n,k,value,baseline,ratio,queries,ms
/// Rows are sorted by (algo, seed); everything except the ms column is
/// reproducible byte-for-byte.
struct ExperimentReport {
  std::vector<RunRow> rows;

  double mean_ratio = 0, median_ratio = 0, min_ratio = 0;
  double mean_queries = 0;

  void finalize();  // sorts rows and fills the aggregates
  void write_csv(std::ostream& out, bool include_ms = true) const;
  std::string csv(bool include_ms = true) const;
  nlohmann::json summary_json() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Runs plain noisy greedy and sampled-mean greedy side by side on the
/// good/bad additive instance under uniform multiplicative noise; ratios are
/// against the analytic optimum.
ExperimentReport scenario_greedy_failure(ElemId n, double noise_eps,
                                         std::span<const std::uint64_t> seeds);

/// The f1-vs-f2 distinguishing game: a query strategy gets `query_budget`
/// erroneous-oracle answers and must guess which function it faced.  Truth
/// alternates across seeds so a blind guess scores exactly 1/2.
struct AdversarialScenarioReport {
  ElemId n = 0;
  double delta = 0, eps = 0;
  std::uint64_t query_budget = 0;
  std::string strategy;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0;
  std::vector<RunRow> rows;  // value = 1 on a correct guess

  nlohmann::json summary_json() const;
};

using QueryFn = std::function<double(const ElemSet&)>;
/// A strategy consumes up to the budget through `query` and returns true to
/// guess f1.  `rng` is the strategy's own deterministic randomness.
using DistinguishStrategy =
    std::function<bool(ElemId n, unsigned k, std::uint64_t budget,
                       const QueryFn& query, Rng& rng)>;

DistinguishStrategy named_strategy(const std::string& name);

AdversarialScenarioReport scenario_adversarial(
    ElemId n, double delta, double eps, std::uint64_t query_budget,
    const std::string& strategy, std::span<const std::uint64_t> seeds);

AdversarialScenarioReport scenario_adversarial(
    ElemId n, double delta, double eps, std::uint64_t query_budget,
    const std::string& strategy_name, const DistinguishStrategy& strategy,
    std::span<const std::uint64_t> seeds);

/// Post-hoc trace annotations against the brute-force optimum (desk scale
/// only).  The optimizers never test these conditions at runtime; they mark
/// the iterations whose guarantees the averaging arguments actually cover.
///
/// A subset-smoothing iteration with prefix S counts as eps-relevant when
/// max_{b∉H∪S} f_{H∪S}(b) ≥ eps·OPT_H/k and OPT_H ≥ OPT/e, where OPT_H is the
/// best (k-|H|)-set marginal past H.
std::vector<bool> annotate_epsilon_relevance(const SetFunction& f,
                                             const RunResult& run,
                                             const ElemSet& h, unsigned k,
                                             double eps,
                                             std::uint64_t budget = 0);

/// A bundle iteration with prefix S counts as eps-significant when
/// max_{|B|=c} f_S(B) ≥ eps·c·OPT/k.
std::vector<bool> annotate_epsilon_significance(const SetFunction& f,
                                                const RunResult& run, unsigned k,
                                                unsigned c, double eps,
                                                std::uint64_t budget = 0);

/// Entry point behind the CLI binary.  Exit codes: 0 success, 2 configuration
/// error, 3 enumeration budget exceeded.
int cli_main(int argc, const char* const* argv);

}  // namespace nsm
