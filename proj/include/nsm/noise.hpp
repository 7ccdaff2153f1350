#pragma once

#include <string>
#include <vector>

#include "nsm/setfn.hpp"

#include <json.hpp>

namespace nsm {

/// Sampling is a pure function of (parameters, stream key); a distribution
/// never owns mutable state.
struct NoiseDistribution {
  enum class Variant { uniform, gaussian, exponential, two_point, constant };

  Variant variant = Variant::constant;
  double a = 1.0;  // uniform lo / gaussian mean / exponential mean / two_point hi / constant value
  double b = 0.0;  // uniform hi / gaussian sd / two_point lo
  double p = 0.0;  // two_point probability of `a`

  static NoiseDistribution uniform(double lo, double hi);
  static NoiseDistribution gaussian(double mean, double sd);
  static NoiseDistribution exponential(double mean);
  static NoiseDistribution two_point(double prob_hi, double hi, double lo);
  static NoiseDistribution constant(double c);

  // Bundled members of the admissible class.
  static NoiseDistribution unit_uniform(double eps) { return uniform(1 - eps, 1 + eps); }
  static NoiseDistribution unit_gaussian(double sd) { return gaussian(1.0, sd); }
  static NoiseDistribution unit_exponential() { return exponential(1.0); }

  double mean() const;
  double stddev() const;
  /// Deterministic draw for (parameters, stream_key).
  double sample(std::uint64_t stream_key) const;

  std::string describe() const;
  nlohmann::json to_json() const;
  static NoiseDistribution from_json(const nlohmann::json& j);
};

enum class NoiseMode {
  multiplicative,          // ξ_S · f(S)
  additive,                // f(S) + ξ_S
  marginal_multiplicative, // ξ_{S,T} · f_S(T)
  marginal_additive,       // f_S(T) + ξ_{S,T}
};

enum class Temporal { consistent, iid_in_time };

const char* to_string(NoiseMode m);
const char* to_string(Temporal t);
NoiseMode noise_mode_from_string(const std::string& s);
Temporal temporal_from_string(const std::string& s);

struct NoiseConfig {
  NoiseDistribution dist = NoiseDistribution::constant(1.0);
  NoiseMode mode = NoiseMode::multiplicative;
  Temporal temporal = Temporal::consistent;
  unsigned correlation_d = 0;     // 0 = independent multipliers per set
  bool truncate_at_zero = false;  // clamp sampled multipliers at 0 (off by default)

  nlohmann::json to_json() const;
  static NoiseConfig from_json(const nlohmann::json& j);
};

/// Value-oracle access with query accounting.  Every value()/marginal_value()
/// call counts exactly one query.  Implementations own a single logical query
/// stream; memoizing modes are not shareable across threads.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual double value(const ElemSet& s) = 0;
  virtual double marginal_value(const ElemSet& s, const ElemSet& t);
  virtual const SetFunction& base() const = 0;

  std::uint64_t queries() const { return queries_; }
  void reset_queries() { queries_ = 0; }

 protected:
  std::uint64_t queries_ = 0;
};

/// The noiseless degenerate: answers f(S) exactly (still counts queries).
class ExactOracle final : public Oracle {
 public:
  explicit ExactOracle(SetFunction f) : f_(std::move(f)) {}

  double value(const ElemSet& s) override {
    ++queries_;
    return f_.eval(s);
  }

  double marginal_value(const ElemSet& s, const ElemSet& t) override {
    ++queries_;
    return f_.marginal(s, t);
  }

  const SetFunction& base() const override { return f_; }

 private:
  SetFunction f_;
};

/// Consistent noisy oracle: the multiplier of a set is a pure function of
/// (master seed, mode, canonical set key), so identical queries return
/// identical answers forever without storing history.  d-correlated mode keeps
/// a memo and lazily clusters: a new set within symmetric difference <= d of a
/// previously queried one adopts that set's multiplier stream.
class NoisyOracle final : public Oracle {
 public:
  struct MemoEntry {
    ElemSet set;
    std::uint64_t stream_key;
  };

  NoisyOracle(SetFunction f, NoiseConfig cfg, std::uint64_t seed);

  double value(const ElemSet& s) override;
  double marginal_value(const ElemSet& s, const ElemSet& t) override;
  const SetFunction& base() const override { return f_; }

  /// Multiplier the oracle would apply to s right now (inspection only; does
  /// not count as a query, but in d-correlated mode it does extend the memo).
  double multiplier(const ElemSet& s);

  const NoiseConfig& config() const { return cfg_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<MemoEntry>& memo() const { return memo_; }

 private:
  std::uint64_t stream_key_for(const ElemSet& s);
  std::uint64_t pair_stream_key(const ElemSet& s, const ElemSet& t) const;
  double draw(std::uint64_t stream_key) const;

  SetFunction f_;
  NoiseConfig cfg_;
  std::uint64_t seed_;
  std::vector<MemoEntry> memo_;
};

/// Mounts a paired instance/oracle rule (erroneous oracles, hand-built
/// correlated noise) behind the uniform Oracle interface.
class RuleOracle final : public Oracle {
 public:
  RuleOracle(SetFunction base, std::function<double(const ElemSet&)> rule)
      : f_(std::move(base)), rule_(std::move(rule)) {}

  double value(const ElemSet& s) override {
    ++queries_;
    return rule_(s);
  }

  const SetFunction& base() const override { return f_; }

 private:
  SetFunction f_;
  std::function<double(const ElemSet&)> rule_;
};

}  // namespace nsm
