#include "nsm/noise.hpp"

#include <cmath>

namespace nsm {
namespace {

using json = nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;

double unit_open(std::uint64_t bits) {
  // (0, 1]: avoids log(0) downstream
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double unit_half_open(std::uint64_t bits) {
  // [0, 1)
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void expect_keys(const json& j, std::initializer_list<const char*> keys,
                 const char* what) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys)
      if (k == key) known = true;
    if (!known)
      throw ConfigError(std::string("unknown key \"") + k + "\" in " + what);
  }
}

}  // namespace

NoiseDistribution NoiseDistribution::uniform(double lo, double hi) {
  if (hi < lo) throw ConfigError("uniform noise needs hi >= lo");
  NoiseDistribution d;
  d.variant = Variant::uniform;
  d.a = lo;
  d.b = hi;
  return d;
}

NoiseDistribution NoiseDistribution::gaussian(double mean, double sd) {
  if (sd <= 0) throw ConfigError("gaussian noise needs sd > 0");
  NoiseDistribution d;
  d.variant = Variant::gaussian;
  d.a = mean;
  d.b = sd;
  return d;
}

NoiseDistribution NoiseDistribution::exponential(double mean) {
  if (mean <= 0) throw ConfigError("exponential noise needs mean > 0");
  NoiseDistribution d;
  d.variant = Variant::exponential;
  d.a = mean;
  return d;
}

NoiseDistribution NoiseDistribution::two_point(double prob_hi, double hi, double lo) {
  if (prob_hi < 0 || prob_hi > 1) throw ConfigError("two_point probability outside [0,1]");
  NoiseDistribution d;
  d.variant = Variant::two_point;
  d.a = hi;
  d.b = lo;
  d.p = prob_hi;
  return d;
}

NoiseDistribution NoiseDistribution::constant(double c) {
  NoiseDistribution d;
  d.variant = Variant::constant;
  d.a = c;
  return d;
}

double NoiseDistribution::mean() const {
  switch (variant) {
    case Variant::uniform: return 0.5 * (a + b);
    case Variant::gaussian: return a;
    case Variant::exponential: return a;
    case Variant::two_point: return p * a + (1 - p) * b;
    case Variant::constant: return a;
  }
  return 0;
}

double NoiseDistribution::stddev() const {
  switch (variant) {
    case Variant::uniform: return (b - a) / std::sqrt(12.0);
    case Variant::gaussian: return b;
    case Variant::exponential: return a;
    case Variant::two_point: return std::sqrt(p * (1 - p)) * std::abs(a - b);
    case Variant::constant: return 0.0;
  }
  return 0;
}

double NoiseDistribution::sample(std::uint64_t stream_key) const {
  const std::uint64_t r1 = mix64(stream_key + kGolden);
  switch (variant) {
    case Variant::uniform:
      return a + (b - a) * unit_half_open(r1);
    case Variant::gaussian: {
      const std::uint64_t r2 = mix64(stream_key + 2 * kGolden);
      const double u1 = unit_open(r1);
      const double u2 = unit_half_open(r2);
      return a + b * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }
    case Variant::exponential:
      return -a * std::log(unit_open(r1));
    case Variant::two_point:
      return unit_half_open(r1) < p ? a : b;
    case Variant::constant:
      return a;
  }
  return 0;
}

std::string NoiseDistribution::describe() const {
  char buf[96];
  switch (variant) {
    case Variant::uniform: std::snprintf(buf, sizeof buf, "uniform[%g,%g]", a, b); break;
    case Variant::gaussian: std::snprintf(buf, sizeof buf, "gaussian(%g,%g)", a, b); break;
    case Variant::exponential: std::snprintf(buf, sizeof buf, "exponential(%g)", a); break;
    case Variant::two_point: std::snprintf(buf, sizeof buf, "two_point(p=%g,%g,%g)", p, a, b); break;
    case Variant::constant: std::snprintf(buf, sizeof buf, "constant(%g)", a); break;
  }
  return buf;
}

json NoiseDistribution::to_json() const {
  switch (variant) {
    case Variant::uniform: return {{"variant", "uniform"}, {"lo", a}, {"hi", b}};
    case Variant::gaussian: return {{"variant", "gaussian"}, {"mean", a}, {"sd", b}};
    case Variant::exponential: return {{"variant", "exponential"}, {"mean", a}};
    case Variant::two_point:
      return {{"variant", "two_point"}, {"p", p}, {"hi", a}, {"lo", b}};
    case Variant::constant: return {{"variant", "constant"}, {"value", a}};
  }
  return {};
}

NoiseDistribution NoiseDistribution::from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant"))
    throw ConfigError("noise dist must be an object with a \"variant\"");
  const std::string v = j.at("variant").get<std::string>();
  if (v == "uniform") {
    expect_keys(j, {"variant", "lo", "hi"}, "uniform dist");
    return uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
  }
  if (v == "gaussian") {
    expect_keys(j, {"variant", "mean", "sd"}, "gaussian dist");
    return gaussian(j.at("mean").get<double>(), j.at("sd").get<double>());
  }
  if (v == "exponential") {
    expect_keys(j, {"variant", "mean"}, "exponential dist");
    return exponential(j.at("mean").get<double>());
  }
  if (v == "two_point") {
    expect_keys(j, {"variant", "p", "hi", "lo"}, "two_point dist");
    return two_point(j.at("p").get<double>(), j.at("hi").get<double>(),
                     j.at("lo").get<double>());
  }
  if (v == "constant") {
    expect_keys(j, {"variant", "value"}, "constant dist");
    return constant(j.at("value").get<double>());
  }
  throw ConfigError("unknown noise variant \"" + v + "\"");
}

const char* to_string(NoiseMode m) {
  switch (m) {
    case NoiseMode::multiplicative: return "multiplicative";
    case NoiseMode::additive: return "additive";
    case NoiseMode::marginal_multiplicative: return "marginal_multiplicative";
    case NoiseMode::marginal_additive: return "marginal_additive";
  }
  return "?";
}

const char* to_string(Temporal t) {
  return t == Temporal::consistent ? "consistent" : "iid_in_time";
}

NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "multiplicative") return NoiseMode::multiplicative;
  if (s == "additive") return NoiseMode::additive;
  if (s == "marginal_multiplicative") return NoiseMode::marginal_multiplicative;
  if (s == "marginal_additive") return NoiseMode::marginal_additive;
  throw ConfigError("unknown noise mode \"" + s + "\"");
}

Temporal temporal_from_string(const std::string& s) {
  if (s == "consistent") return Temporal::consistent;
  if (s == "iid_in_time") return Temporal::iid_in_time;
  throw ConfigError("unknown temporal mode \"" + s + "\"");
}

json NoiseConfig::to_json() const {
  return {{"dist", dist.to_json()},
          {"mode", std::string(to_string(mode))},
          {"temporal", std::string(to_string(temporal))},
          {"correlation", {{"d", correlation_d}}}};
}

NoiseConfig NoiseConfig::from_json(const json& j) {
  expect_keys(j, {"dist", "mode", "temporal", "correlation", "truncate_at_zero"},
              "noise spec");
  NoiseConfig c;
  if (j.contains("dist")) c.dist = NoiseDistribution::from_json(j.at("dist"));
  if (j.contains("mode")) c.mode = noise_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("temporal"))
    c.temporal = temporal_from_string(j.at("temporal").get<std::string>());
  if (j.contains("correlation")) {
    const json& corr = j.at("correlation");
    expect_keys(corr, {"d"}, "correlation spec");
    c.correlation_d = corr.value("d", 0u);
  }
  if (j.contains("truncate_at_zero"))
    c.truncate_at_zero = j.at("truncate_at_zero").get<bool>();
  return c;
}

double Oracle::marginal_value(const ElemSet&, const ElemSet&) {
  throw std::invalid_argument("oracle does not expose marginal queries");
}

NoisyOracle::NoisyOracle(SetFunction f, NoiseConfig cfg, std::uint64_t seed)
    : f_(std::move(f)), cfg_(cfg), seed_(seed) {}

double NoisyOracle::draw(std::uint64_t stream_key) const {
  double xi = cfg_.dist.sample(stream_key);
  if (cfg_.truncate_at_zero && xi < 0) xi = 0;
  return xi;
}

std::uint64_t NoisyOracle::stream_key_for(const ElemSet& s) {
  std::uint64_t k = hash_combine(seed_, static_cast<std::uint64_t>(cfg_.mode));
  k = hash_combine(k, s.key());
  if (cfg_.correlation_d > 0) {
    // lazy clustering: adopt the stream of any earlier query within distance d
    bool adopted = false;
    for (const MemoEntry& e : memo_) {
      if (s.symmetric_difference_size(e.set) <= cfg_.correlation_d) {
        k = e.stream_key;
        if (s != e.set) memo_.push_back({s, k});
        adopted = true;
        break;
      }
    }
    if (!adopted) memo_.push_back({s, k});
  }
  if (cfg_.temporal == Temporal::iid_in_time) k = hash_combine(k, queries_);
  return k;
}

double NoisyOracle::multiplier(const ElemSet& s) {
  return draw(stream_key_for(s));
}

double NoisyOracle::value(const ElemSet& s) {
  if (cfg_.mode == NoiseMode::marginal_multiplicative ||
      cfg_.mode == NoiseMode::marginal_additive)
    return marginal_value(ElemSet{}, s);
  ++queries_;
  const double xi = draw(stream_key_for(s));
  const double v = f_.eval(s);
  return cfg_.mode == NoiseMode::multiplicative ? xi * v : v + xi;
}

double NoisyOracle::marginal_value(const ElemSet& s, const ElemSet& t) {
  if (cfg_.mode != NoiseMode::marginal_multiplicative &&
      cfg_.mode != NoiseMode::marginal_additive)
    throw std::invalid_argument("marginal query on a non-marginal noise mode");
  ++queries_;
  std::uint64_t k = pair_stream_key(s, t);
  if (cfg_.temporal == Temporal::iid_in_time) k = hash_combine(k, queries_);
  const double xi = draw(k);
  const double m = f_.marginal(s, t);
  return cfg_.mode == NoiseMode::marginal_multiplicative ? xi * m : m + xi;
}

std::uint64_t NoisyOracle::pair_stream_key(const ElemSet& s, const ElemSet& t) const {
  std::uint64_t k = hash_combine(seed_, static_cast<std::uint64_t>(cfg_.mode));
  k = hash_combine(k, s.key());
  k = hash_combine(k, mix64(t.key() + 0x7e));
  return k;
}

}  // namespace nsm
