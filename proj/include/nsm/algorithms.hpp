#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsm/noise.hpp"
#include "nsm/setfn.hpp"
#include "nsm/smoothing.hpp"

namespace nsm {

/// Enumeration/sampling bounds shared by the optimizers.
struct AlgoCaps {
  std::uint64_t enumeration_budget = 0;  // 0 = library default (env-overridable)
  std::uint64_t subset_cap = std::uint64_t{1} << 20;
  std::uint64_t subset_sample = std::uint64_t{1} << 16;
  /// >0 restricts sampled-mean bundle enumeration to combinations of the
  /// top-pool elements by noisy singleton value, a flagged heuristic for
  /// instances where full bundle enumeration is out of budget.
  unsigned pool = 0;
};

struct AlgoConfig {
  unsigned k = 1;
  double eps = 0.5;
  std::optional<unsigned> smoothing_size;  // ℓ override
  std::optional<double> slick_delta;       // δ override (normalized to 1/integer)
  std::optional<unsigned> bundle_size;     // c override
  AlgoCaps caps;
  std::uint64_t seed = 0;
  bool compare_powerset = false;  // score comparisons on all 2^ℓ subsets instead of proper ones
  unsigned correlation_d = 0;     // >0 switches to the correlation-robust smoothing schemes
  std::uint64_t boost_t = 1;      // probes for boosted_opt
  std::string boost_inner = "greedy";
};

struct IterTrace {
  ElemSet chosen;            // element/bundle added (or tournament participant)
  double score = 0;          // the (noisy) smooth value that won the iteration
  double true_value = 0;     // f of the solution prefix after this iteration
  std::uint64_t queries = 0; // oracle counter delta so far
};

struct RunResult {
  ElemSet solution;
  double true_value = 0;
  std::uint64_t queries = 0;
  std::vector<IterTrace> trace;
  std::vector<std::string> notes;  // logged deviations (shrunken ℓ, regime overrides, ...)
};

std::uint64_t default_budget();  // 10^7, overridable via NOISY_SUBMOD_BUDGET

/// Plain greedy on noisy values: k rounds of argmax_a f̃(S ∪ a), ties to the
/// lowest element id.
RunResult greedy(Oracle& oracle, unsigned k);

/// Greedy on the noisy smooth value over subsets of H, initialized with R;
/// grows S from R to size k − |H| and returns S (callers union H).
/// pre: H ∩ R = ∅ and |H| + |R| < k.
RunResult smooth_greedy(Oracle& oracle, unsigned k, const ElemSet& h,
                        const ElemSet& r, const AlgoConfig& cfg = {});

/// Majority vote of f̃(T_i ∪ H') vs f̃(T_j ∪ H') over proper subsets H' ⊂ H
/// (all subsets under the powerset flag); single comparisons tie toward T_i,
/// and T_i wins the procedure on at least half the comparisons.
ElemSet smooth_compare(Oracle& oracle, const ElemSet& ti, const ElemSet& tj,
                       const ElemSet& h, bool powerset = false);

/// Tournament of 1/δ smooth-greedy runs over disjoint smoothing sets.
RunResult slick_greedy(Oracle& oracle, unsigned k, double eps,
                       const AlgoConfig& cfg = {});

/// Sampled-mean greedy: adds one bundle of size c per iteration. The noisy
/// argmax bundle is located through swap-averaged values, then a single-query
/// argmax over its swaps is committed.
RunResult sm_greedy(Oracle& oracle, unsigned k, double eps,
                    const AlgoConfig& cfg = {});

/// Extension-smoothed argmax over k-sets followed by a uniformly random swap;
/// the guarantee is in expectation over the swap.
RunResult exp_small_greedy(Oracle& oracle, unsigned k, std::uint64_t seed,
                           const AlgoConfig& cfg = {});

/// Extension-smoothed argmax over (k−1)-sets, completed by the best single
/// noisy extension.
RunResult whp_small_greedy(Oracle& oracle, unsigned k, const AlgoConfig& cfg = {});

enum class Regime { slick, sm, very_small };

const char* to_string(Regime r);

struct RegimeChoice {
  Regime tag = Regime::very_small;
  unsigned smoothing_size = 1;  // ℓ
  double delta = 0.0;           // slick partition parameter
  unsigned bundle_size = 1;     // c
};

/// Total and deterministic: exactly one regime per (n, k, eps), with the
/// boundary constants 3168·log2log2(n)/eps^2 and ceil(16/eps).
RegimeChoice select_regime(unsigned n, unsigned k, double eps);

/// ℓ rule: 25·log2(n) when k ≥ 2400·log2(n), else 33·log2log2(n), capped by
/// the subset budget and shrunk to floor(k/2) when it would swallow k.
unsigned auto_smoothing_size(unsigned n, unsigned k, const AlgoCaps& caps = {});

/// Runs the named algorithm (greedy|smooth|slick|sm|exp_small|whp_small|auto|
/// boosted); "auto" dispatches through select_regime.
RunResult run_algorithm(const std::string& name, Oracle& oracle,
                        const AlgoConfig& cfg);

/// Runs the inner algorithm at budget k−r (r minimal with C(n−k, r) ≥ t),
/// then probes t distinct r-extensions and keeps the noisy argmax; the
/// objective maximized is the observed f̃ itself.
RunResult boosted_opt(Oracle& oracle, unsigned k, std::uint64_t t,
                      const std::string& inner, const AlgoConfig& cfg = {});

/// Exact argmax of f over sets of size ≤ k by enumeration (lexicographic
/// tie-break, smaller sets first).  Throws BudgetError when C(n,k) exceeds the
/// budget (0 = library default).
std::pair<ElemSet, double> brute_force_opt(const SetFunction& f, unsigned k,
                                           std::uint64_t budget = 0);

}  // namespace nsm
