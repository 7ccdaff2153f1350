#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nsm/elemset.hpp"

#include <json.hpp>

namespace nsm {

/// Monotone submodular set-function instance.  Evaluation is pure and
/// deterministic; instances are value types and safely shareable across
/// threads.
class SetFunction {
 public:
  enum class Kind {
    coverage,
    additive,
    unit_demand,
    adversarial_f1,
    adversarial_f2,
    tinyk_f1,
    tinyk_f2,
    custom,
  };

  struct Coverage {
    std::uint32_t universe = 0;
    std::vector<std::vector<std::uint32_t>> item_sets;  // one item list per element
  };
  struct Additive {
    std::vector<double> weights;
  };
  struct UnitDemand {
    std::vector<double> values;
  };
  // min{ |S ∩ planted|·n^{1/2} + n^{1/2+delta}/eps, |S|·n^{1+delta} }
  struct AdversarialF1 {
    ElemId n = 1;
    double delta = 0.25, eps = 0.5;
    ElemSet planted;
  };
  // min{ |S|·n^{delta} + n^{1/2+delta}/eps, |S|·n^{1+delta} }; symmetric in S
  struct AdversarialF2 {
    ElemId n = 1;
    double delta = 0.25, eps = 0.5;
  };
  // 2|S| below k, 2k-1 at k, 2k above; the planted variant scores 2k on S*.
  struct TinyK {
    ElemId n = 1;
    unsigned k = 1;
    std::optional<ElemSet> planted;  // engaged for the f2 variant
  };
  struct Custom {
    ElemId n = 1;
    std::function<double(const ElemSet&)> fn;
    std::string name;
  };

  static SetFunction coverage(std::uint32_t universe,
                              std::vector<std::vector<std::uint32_t>> item_sets);
  static SetFunction additive(std::vector<double> weights);
  static SetFunction unit_demand(std::vector<double> values);
  static SetFunction custom(ElemId n, std::function<double(const ElemSet&)> fn,
                            std::string name = "custom");

  double eval(const ElemSet& s) const;
  /// f(S ∪ T) − f(S)
  double marginal(const ElemSet& s, const ElemSet& t) const;

  ElemId n() const;
  GroundSet ground() const { return GroundSet(n()); }
  Kind kind() const { return kind_; }
  const char* kind_name() const;

  nlohmann::json to_json() const;
  static SetFunction from_json(const nlohmann::json& j);
  static SetFunction load(const std::string& path);
  void save(const std::string& path) const;

  template <class T>
  const T& payload() const {
    return std::get<T>(body_);
  }

 private:
  using Body = std::variant<Coverage, Additive, UnitDemand, AdversarialF1,
                            AdversarialF2, TinyK, Custom>;
  SetFunction(Kind k, Body b) : kind_(k), body_(std::move(b)) {}

  void check_range(const ElemSet& s) const;

  Kind kind_ = Kind::additive;
  Body body_;
};

/// Hardness pair: f1 hides a planted set behind an erroneous oracle that
/// answers with the symmetric f2 whenever that lies inside the multiplicative
/// error band.
struct AdversarialPair {
  SetFunction f1;
  SetFunction f2;
  ElemSet planted;
  ElemId n;
  double delta;
  double eps;

  /// f2(S) when (1-eps)·f1(S) <= f2(S) <= (1+eps)·f1(S), else f1(S).
  double erroneous_value(const ElemSet& s) const;
};

AdversarialPair make_adversarial_pair(ElemId n, double delta, double eps,
                                      std::uint64_t seed);

/// Coverage instance with a family A of sets covering one shared core and a
/// family B of disjoint singleton sets, plus the erroneous-oracle rule that
/// keeps greedy locked inside A.
struct GreedyTrap {
  SetFunction f;
  unsigned core_size;
  unsigned num_a_sets;
  unsigned num_b_sets;
  double delta_prime;

  /// Exact union size except: S ⊆ A (nonempty) scores core+delta', and
  /// A'∪{b} with A' ⊆ A nonempty, b ∈ B scores exactly core.
  double trap_value(const ElemSet& s) const;
  bool is_a_set(ElemId e) const { return e < num_a_sets; }
};

GreedyTrap make_greedy_trap(unsigned num_b_sets, double eps);

/// Additive instance with floor(sqrt(n)) good elements of weight n^{1/4} and
/// the rest of weight 1; mild multiplicative noise derails plain greedy here.
SetFunction make_noisy_greedy_failure(ElemId n);

struct TinyKPair {
  SetFunction f1;
  SetFunction f2;
  ElemSet planted;
};

/// k=1 gives the min{|S|,2} pair with a special element; general k the
/// 2|S| / 2k-1 / 2k construction with planted set {0..k-1}.
TinyKPair make_tinyk_pair(ElemId n, unsigned k);

struct CorrelatedUnitDemand {
  SetFunction f;
  double big;

  /// Correlated noise collapses every nonempty set to value 1.
  double noisy_value(const ElemSet& s) const;
};

CorrelatedUnitDemand make_unit_demand_correlated(ElemId n, double big);

struct CheckResult {
  bool ok = true;
  ElemSet small_set;  // S in a violating triple
  ElemSet big_set;    // T ⊇ S
  ElemId elem = 0;    // a ∉ T
  double lhs = 0, rhs = 0;

  explicit operator bool() const { return ok; }
  std::string describe() const;
};

/// Exhaustively verifies S ⊆ T ⇒ f(S) ≤ f(T) via single-element steps.
/// Throws BudgetError when n exceeds limit_n.
CheckResult check_monotone(const SetFunction& f, unsigned limit_n,
                           double tol = 1e-9);

/// Exhaustively verifies diminishing returns f_S(a) ≥ f_T(a) for S ⊆ T, a ∉ T
/// via the local two-element characterization.
CheckResult check_submodular(const SetFunction& f, unsigned limit_n,
                             double tol = 1e-9);

// Seeded random instance families used by tests and the harness.
SetFunction random_coverage(ElemId n, std::uint32_t universe, unsigned max_items,
                            std::uint64_t seed);
SetFunction random_additive(ElemId n, std::uint64_t seed);
SetFunction random_unit_demand(ElemId n, std::uint64_t seed);
/// Rotates through the monotone submodular families above.
SetFunction random_monotone_instance(ElemId n, std::uint64_t seed);

}  // namespace nsm
