#include "nsm/setfn.hpp"

#include <cmath>
#include <fstream>

namespace nsm {
namespace {

using json = nlohmann::json;

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

double coverage_eval(const SetFunction::Coverage& c, const ElemSet& s) {
  thread_local std::vector<std::uint64_t> bits;
  const std::size_t words = (c.universe + 63) / 64;
  bits.assign(words, 0);
  std::size_t covered = 0;
  for (ElemId e : s) {
    for (std::uint32_t item : c.item_sets[e]) {
      std::uint64_t& w = bits[item >> 6];
      const std::uint64_t m = 1ull << (item & 63);
      if (!(w & m)) {
        w |= m;
        ++covered;
      }
    }
  }
  return static_cast<double>(covered);
}

double tinyk_eval(const SetFunction::TinyK& t, const ElemSet& s) {
  const double k = static_cast<double>(t.k);
  if (s.size() < t.k) return 2.0 * static_cast<double>(s.size());
  if (s.size() > t.k) return 2.0 * k;
  if (t.planted && s == *t.planted) return 2.0 * k;
  return 2.0 * k - 1.0;
}

struct AdvF1Cache {
  double sqrt_n, addend, cap;
};

AdvF1Cache adv_terms(ElemId n, double delta, double eps) {
  const double nn = static_cast<double>(n);
  return {std::sqrt(nn), std::pow(nn, 0.5 + delta) / eps,
          std::pow(nn, 1.0 + delta)};
}

}  // namespace

SetFunction SetFunction::coverage(std::uint32_t universe,
                                  std::vector<std::vector<std::uint32_t>> item_sets) {
  if (item_sets.empty()) throw ConfigError("coverage instance needs at least one set");
  for (const auto& items : item_sets)
    for (std::uint32_t it : items)
      if (it >= universe) throw ConfigError("coverage item outside universe");
  Coverage c{universe, std::move(item_sets)};
  for (auto& items : c.item_sets) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
  }
  return SetFunction(Kind::coverage, std::move(c));
}

SetFunction SetFunction::additive(std::vector<double> weights) {
  if (weights.empty()) throw ConfigError("additive instance needs at least one weight");
  return SetFunction(Kind::additive, Additive{std::move(weights)});
}

SetFunction SetFunction::unit_demand(std::vector<double> values) {
  if (values.empty()) throw ConfigError("unit-demand instance needs at least one value");
  return SetFunction(Kind::unit_demand, UnitDemand{std::move(values)});
}

SetFunction SetFunction::custom(ElemId n, std::function<double(const ElemSet&)> fn,
                                std::string name) {
  if (n < 1) throw ConfigError("custom instance needs n >= 1");
  return SetFunction(Kind::custom, Custom{n, std::move(fn), std::move(name)});
}

ElemId SetFunction::n() const {
  return std::visit(
      [](const auto& b) -> ElemId {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Coverage>)
          return static_cast<ElemId>(b.item_sets.size());
        else if constexpr (std::is_same_v<T, Additive>)
          return static_cast<ElemId>(b.weights.size());
        else if constexpr (std::is_same_v<T, UnitDemand>)
          return static_cast<ElemId>(b.values.size());
        else
          return b.n;
      },
      body_);
}

void SetFunction::check_range(const ElemSet& s) const {
  if (!s.empty() && s.max_elem() >= n())
    throw std::out_of_range("element " + std::to_string(s.max_elem()) +
                            " outside ground set of size " + std::to_string(n()));
}

double SetFunction::eval(const ElemSet& s) const {
  check_range(s);
  switch (kind_) {
    case Kind::coverage:
      return coverage_eval(std::get<Coverage>(body_), s);
    case Kind::additive: {
      const auto& w = std::get<Additive>(body_).weights;
      double sum = 0;
      for (ElemId e : s) sum += w[e];
      return sum;
    }
    case Kind::unit_demand: {
      const auto& v = std::get<UnitDemand>(body_).values;
      double best = 0;
      for (ElemId e : s) best = std::max(best, v[e]);
      return best;
    }
    case Kind::adversarial_f1: {
      const auto& a = std::get<AdversarialF1>(body_);
      const auto t = adv_terms(a.n, a.delta, a.eps);
      const double hits = static_cast<double>(s.intersection_size(a.planted));
      return std::min(hits * t.sqrt_n + t.addend,
                      static_cast<double>(s.size()) * t.cap);
    }
    case Kind::adversarial_f2: {
      const auto& a = std::get<AdversarialF2>(body_);
      const auto t = adv_terms(a.n, a.delta, a.eps);
      const double sz = static_cast<double>(s.size());
      return std::min(sz * std::pow(static_cast<double>(a.n), a.delta) + t.addend,
                      sz * t.cap);
    }
    case Kind::tinyk_f1:
    case Kind::tinyk_f2:
      return tinyk_eval(std::get<TinyK>(body_), s);
    case Kind::custom:
      return std::get<Custom>(body_).fn(s);
  }
  throw std::logic_error("unreachable");
}

double SetFunction::marginal(const ElemSet& s, const ElemSet& t) const {
  return eval(s.set_union(t)) - eval(s);
}

const char* SetFunction::kind_name() const {
  switch (kind_) {
    case Kind::coverage: return "coverage";
    case Kind::additive: return "additive";
    case Kind::unit_demand: return "unit_demand";
    case Kind::adversarial_f1: return "adversarial_f1";
    case Kind::adversarial_f2: return "adversarial_f2";
    case Kind::tinyk_f1: return "tinyk_f1";
    case Kind::tinyk_f2: return "tinyk_f2";
    case Kind::custom: return "custom";
  }
  return "?";
}

json SetFunction::to_json() const {
  json j;
  j["kind"] = kind_name();
  j["n"] = n();
  switch (kind_) {
    case Kind::coverage: {
      const auto& c = std::get<Coverage>(body_);
      j["universe"] = c.universe;
      j["item_sets"] = c.item_sets;
      break;
    }
    case Kind::additive:
      j["weights"] = std::get<Additive>(body_).weights;
      break;
    case Kind::unit_demand:
      j["values"] = std::get<UnitDemand>(body_).values;
      break;
    case Kind::adversarial_f1: {
      const auto& a = std::get<AdversarialF1>(body_);
      j["delta"] = a.delta;
      j["eps"] = a.eps;
      j["planted"] = a.planted.elems();
      break;
    }
    case Kind::adversarial_f2: {
      const auto& a = std::get<AdversarialF2>(body_);
      j["delta"] = a.delta;
      j["eps"] = a.eps;
      break;
    }
    case Kind::tinyk_f1:
    case Kind::tinyk_f2: {
      const auto& t = std::get<TinyK>(body_);
      j["k"] = t.k;
      if (t.planted) j["planted"] = t.planted->elems();
      break;
    }
    case Kind::custom:
      throw ConfigError("custom instances are not serializable");
  }
  return j;
}

SetFunction SetFunction::from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("instance document must be an object with a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "coverage") {
    expect_keys(j, {"kind", "n", "universe", "item_sets"}, "coverage instance");
    auto sets = j.at("item_sets").get<std::vector<std::vector<std::uint32_t>>>();
    auto f = coverage(j.at("universe").get<std::uint32_t>(), std::move(sets));
    if (j.contains("n") && j.at("n").get<ElemId>() != f.n())
      throw ConfigError("coverage \"n\" disagrees with item_sets length");
    return f;
  }
  if (kind == "additive") {
    expect_keys(j, {"kind", "n", "weights"}, "additive instance");
    return additive(j.at("weights").get<std::vector<double>>());
  }
  if (kind == "unit_demand") {
    expect_keys(j, {"kind", "n", "values"}, "unit_demand instance");
    return unit_demand(j.at("values").get<std::vector<double>>());
  }
  if (kind == "adversarial_f1") {
    expect_keys(j, {"kind", "n", "delta", "eps", "planted"}, "adversarial_f1 instance");
    AdversarialF1 a;
    a.n = j.at("n").get<ElemId>();
    a.delta = j.at("delta").get<double>();
    a.eps = j.at("eps").get<double>();
    a.planted = ElemSet::from_unsorted(j.at("planted").get<std::vector<ElemId>>());
    return SetFunction(Kind::adversarial_f1, std::move(a));
  }
  if (kind == "adversarial_f2") {
    expect_keys(j, {"kind", "n", "delta", "eps"}, "adversarial_f2 instance");
    AdversarialF2 a;
    a.n = j.at("n").get<ElemId>();
    a.delta = j.at("delta").get<double>();
    a.eps = j.at("eps").get<double>();
    return SetFunction(Kind::adversarial_f2, std::move(a));
  }
  if (kind == "tinyk_f1" || kind == "tinyk_f2") {
    expect_keys(j, {"kind", "n", "k", "planted"}, "tinyk instance");
    TinyK t;
    t.n = j.at("n").get<ElemId>();
    t.k = j.at("k").get<unsigned>();
    if (j.contains("planted"))
      t.planted = ElemSet::from_unsorted(j.at("planted").get<std::vector<ElemId>>());
    return SetFunction(kind == "tinyk_f1" ? Kind::tinyk_f1 : Kind::tinyk_f2,
                       std::move(t));
  }
  throw ConfigError("unknown instance kind \"" + kind + "\"");
}

SetFunction SetFunction::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("bad JSON in " + path + ": " + e.what());
  }
  return from_json(j);
}

void SetFunction::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write instance file " + path);
  out << to_json().dump(2) << "\n";
}

double AdversarialPair::erroneous_value(const ElemSet& s) const {
  const double v1 = f1.eval(s);
  const double v2 = f2.eval(s);
  if ((1.0 - eps) * v1 <= v2 && v2 <= (1.0 + eps) * v1) return v2;
  return v1;
}

AdversarialPair make_adversarial_pair(ElemId n, double delta, double eps,
                                      std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 0.5)) throw ConfigError("delta must lie in (0, 1/2)");
  if (!(eps > 0.0 && eps <= 0.5)) throw ConfigError("eps must lie in (0, 1/2]");
  const double p = std::pow(static_cast<double>(n), -0.5 + delta);
  if (!(p > 0.0 && p < 1.0))
    throw ConfigError("n too small: inclusion probability n^{-1/2+delta} not in (0,1)");
  Rng rng(hash_combine(seed, 0xadd5));
  std::vector<ElemId> picked;
  for (ElemId i = 0; i < n; ++i)
    if (rng.real01() < p) picked.push_back(i);
  ElemSet planted = ElemSet::from_sorted(std::move(picked));

  SetFunction f1 = SetFunction::from_json(
      {{"kind", "adversarial_f1"}, {"n", n}, {"delta", delta}, {"eps", eps},
       {"planted", planted.elems()}});
  SetFunction f2 = SetFunction::from_json(
      {{"kind", "adversarial_f2"}, {"n", n}, {"delta", delta}, {"eps", eps}});
  return AdversarialPair{std::move(f1), std::move(f2), std::move(planted), n,
                         delta, eps};
}

double GreedyTrap::trap_value(const ElemSet& s) const {
  if (s.empty()) return 0.0;
  std::size_t a_members = 0;
  std::size_t b_members = 0;
  for (ElemId e : s) (e < num_a_sets ? a_members : b_members)++;
  if (b_members == 0) return static_cast<double>(core_size) + delta_prime;
  if (a_members >= 1 && b_members == 1) return static_cast<double>(core_size);
  return f.eval(s);
}

GreedyTrap make_greedy_trap(unsigned num_b_sets, double eps) {
  if (num_b_sets < 1) throw ConfigError("need at least one B set");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  // epsilon guard: (1-eps)/eps lands a hair above an integer for eps = 1/3
  const unsigned core =
      static_cast<unsigned>(std::ceil((1.0 - eps) / eps - 1e-9));
  const unsigned num_a = num_b_sets;  // one A set per B set keeps the trap deep
  std::vector<std::vector<std::uint32_t>> sets;
  for (unsigned i = 0; i < num_a; ++i) {
    std::vector<std::uint32_t> items(core);
    for (unsigned c = 0; c < core; ++c) items[c] = c;
    sets.push_back(std::move(items));
  }
  for (unsigned b = 0; b < num_b_sets; ++b) sets.push_back({core + b});
  SetFunction f = SetFunction::coverage(core + num_b_sets, std::move(sets));
  const double delta_prime = 1e-3 * static_cast<double>(core);
  return GreedyTrap{std::move(f), core, num_a, num_b_sets, delta_prime};
}

SetFunction make_noisy_greedy_failure(ElemId n) {
  if (n < 4) throw ConfigError("need n >= 4");
  const auto good = static_cast<ElemId>(std::floor(std::sqrt(static_cast<double>(n))));
  const double w_good = std::pow(static_cast<double>(n), 0.25);
  std::vector<double> w(n, 1.0);
  for (ElemId i = 0; i < good; ++i) w[i] = w_good;
  return SetFunction::additive(std::move(w));
}

TinyKPair make_tinyk_pair(ElemId n, unsigned k) {
  if (k < 1) throw ConfigError("need k >= 1");
  if (n <= 2 * k) throw ConfigError("need n > 2k");
  ElemSet planted = ElemSet::prefix(k);
  SetFunction f1 = SetFunction::from_json({{"kind", "tinyk_f1"}, {"n", n}, {"k", k}});
  SetFunction f2 = SetFunction::from_json(
      {{"kind", "tinyk_f2"}, {"n", n}, {"k", k}, {"planted", planted.elems()}});
  return TinyKPair{std::move(f1), std::move(f2), std::move(planted)};
}

double CorrelatedUnitDemand::noisy_value(const ElemSet& s) const {
  const double mult = s.contains(0) ? 1.0 / big : 1.0;
  return mult * f.eval(s);
}

CorrelatedUnitDemand make_unit_demand_correlated(ElemId n, double big) {
  if (big <= 1.0) throw ConfigError("need special value > 1");
  std::vector<double> v(n, 1.0);
  v[0] = big;  // element 0 is the special one
  return CorrelatedUnitDemand{SetFunction::unit_demand(std::move(v)), big};
}

std::string CheckResult::describe() const {
  if (ok) return "ok";
  return "violation: S=" + small_set.to_string() + " T=" + big_set.to_string() +
         " a=" + std::to_string(elem) + " lhs=" + std::to_string(lhs) +
         " rhs=" + std::to_string(rhs);
}

namespace {

// Per-mask value table; masks index subsets of {0..n-1}.
std::vector<double> eval_table(const SetFunction& f, unsigned n) {
  std::vector<double> table(std::size_t{1} << n);
  std::vector<ElemId> buf;
  ElemSet scratch;
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    buf.clear();
    for (unsigned i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) buf.push_back(i);
    scratch.assign_sorted(buf);
    table[mask] = f.eval(scratch);
  }
  return table;
}

ElemSet mask_to_set(std::size_t mask, unsigned n) {
  std::vector<ElemId> buf;
  for (unsigned i = 0; i < n; ++i)
    if (mask & (std::size_t{1} << i)) buf.push_back(i);
  return ElemSet::from_sorted(std::move(buf));
}

void guard_budget(const SetFunction& f, unsigned limit_n) {
  if (f.n() > limit_n)
    throw BudgetError("exhaustive check budget exceeded: n=" + std::to_string(f.n()) +
                      " > limit " + std::to_string(limit_n));
  if (f.n() > 22) throw BudgetError("exhaustive check capped at n=22");
}

}  // namespace

CheckResult check_monotone(const SetFunction& f, unsigned limit_n, double tol) {
  guard_budget(f, limit_n);
  const unsigned n = f.n();
  const auto table = eval_table(f, n);
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    for (unsigned a = 0; a < n; ++a) {
      const std::size_t bit = std::size_t{1} << a;
      if (mask & bit) continue;
      if (table[mask | bit] < table[mask] - tol) {
        CheckResult r;
        r.ok = false;
        r.small_set = mask_to_set(mask, n);
        r.big_set = mask_to_set(mask | bit, n);
        r.elem = a;
        r.lhs = table[mask | bit];
        r.rhs = table[mask];
        return r;
      }
    }
  }
  return {};
}

CheckResult check_submodular(const SetFunction& f, unsigned limit_n, double tol) {
  guard_budget(f, limit_n);
  const unsigned n = f.n();
  const auto table = eval_table(f, n);
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    for (unsigned a = 0; a < n; ++a) {
      const std::size_t abit = std::size_t{1} << a;
      if (mask & abit) continue;
      for (unsigned b = 0; b < n; ++b) {
        const std::size_t bbit = std::size_t{1} << b;
        if (a == b || (mask & bbit)) continue;
        // f_S(a) >= f_{S∪b}(a)
        const double lhs = table[mask | abit] - table[mask];
        const double rhs = table[mask | abit | bbit] - table[mask | bbit];
        if (lhs < rhs - tol) {
          CheckResult r;
          r.ok = false;
          r.small_set = mask_to_set(mask, n);
          r.big_set = mask_to_set(mask | bbit, n);
          r.elem = a;
          r.lhs = lhs;
          r.rhs = rhs;
          return r;
        }
      }
    }
  }
  return {};
}

SetFunction random_coverage(ElemId n, std::uint32_t universe, unsigned max_items,
                            std::uint64_t seed) {
  if (universe == 0 || max_items == 0) throw ConfigError("empty coverage shape");
  Rng rng(hash_combine(seed, 0xc0f));
  std::vector<std::vector<std::uint32_t>> sets(n);
  for (ElemId i = 0; i < n; ++i) {
    const unsigned count = 1 + static_cast<unsigned>(rng.below(max_items));
    for (unsigned c = 0; c < count; ++c)
      sets[i].push_back(static_cast<std::uint32_t>(rng.below(universe)));
  }
  return SetFunction::coverage(universe, std::move(sets));
}

SetFunction random_additive(ElemId n, std::uint64_t seed) {
  Rng rng(hash_combine(seed, 0xadd));
  std::vector<double> w(n);
  for (auto& x : w) x = static_cast<double>(1 + rng.below(100));
  return SetFunction::additive(std::move(w));
}

SetFunction random_unit_demand(ElemId n, std::uint64_t seed) {
  Rng rng(hash_combine(seed, 0x0d));
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(1 + rng.below(50));
  return SetFunction::unit_demand(std::move(v));
}

SetFunction random_monotone_instance(ElemId n, std::uint64_t seed) {
  switch (seed % 3) {
    case 0: return random_coverage(n, 2 * n, 4, seed);
    case 1: return random_additive(n, seed);
    default: return random_unit_demand(n, seed);
  }
}

}  // namespace nsm
