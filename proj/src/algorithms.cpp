#include "nsm/algorithms.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace nsm {
namespace {

// argmax with ties broken toward the lexicographically smallest canonical set
struct Best {
  double score = -std::numeric_limits<double>::infinity();
  ElemSet set;
  bool valid = false;

  void offer(double s, const ElemSet& x) {
    if (!valid || s > score || (s == score && x < set)) {
      score = s;
      set = x;
      valid = true;
    }
  }
};

SubsetCaps subset_caps(const AlgoConfig& cfg) {
  return SubsetCaps{cfg.caps.subset_cap, cfg.caps.subset_sample, cfg.seed};
}

double true_value(const Oracle& oracle, const ElemSet& s) {
  return oracle.base().eval(s);  // trace bookkeeping, not an oracle query
}

void push_trace(RunResult& r, Oracle& o, std::uint64_t q0, const ElemSet& chosen,
                double score, const ElemSet& solution) {
  IterTrace t;
  t.chosen = chosen;
  t.score = score;
  t.true_value = true_value(o, solution);
  t.queries = o.queries() - q0;
  r.trace.push_back(std::move(t));
}

double log2_clamped(double x) { return std::log2(std::max(x, 2.0)); }

// Splits H into collections of disjoint bundles for correlation radius d:
// bundle width d+1 keeps any two sets inside one average strictly farther than
// d apart, collection rotation keeps consecutive iterations apart.
std::vector<std::vector<ElemSet>> bundle_collections(const ElemSet& h, unsigned d,
                                                     RunResult& result) {
  const unsigned width = d + 1;
  const std::size_t bundles = h.size() / width;
  const std::size_t per_collection = bundles / d;
  if (per_collection == 0)
    throw ConfigError("smoothing set too small for the correlated bundle scheme");
  std::vector<std::vector<ElemSet>> collections(d);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < d * per_collection; ++b) {
    std::vector<ElemId> blk(h.elems().begin() + pos, h.elems().begin() + pos + width);
    collections[b % d].push_back(ElemSet::from_sorted(std::move(blk)));
    pos += width;
  }
  if (pos < h.size())
    result.notes.push_back("correlated scheme: trailing " +
                           std::to_string(h.size() - pos) +
                           " smoothing elements unused by neighborhoods");
  return collections;
}

std::uint64_t env_budget() {
  if (const char* s = std::getenv("NOISY_SUBMOD_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw ConfigError("NOISY_SUBMOD_BUDGET must be a positive integer");
  }
  return 10'000'000ull;
}

std::uint64_t resolve_budget(std::uint64_t requested) {
  return requested > 0 ? requested : default_budget();
}

}  // namespace

std::uint64_t default_budget() {
  static const std::uint64_t b = env_budget();
  return b;
}

RunResult greedy(Oracle& oracle, unsigned k) {
  const GroundSet g = oracle.base().ground();
  if (k > g.n) throw ConfigError("budget k exceeds the ground set");
  const std::uint64_t q0 = oracle.queries();
  RunResult r;
  ElemSet s;
  ElemSet probe;
  std::vector<ElemId> buf;
  for (unsigned it = 0; it < k; ++it) {
    double best = -std::numeric_limits<double>::infinity();
    ElemId pick = 0;
    bool found = false;
    for (ElemId a = 0; a < g.n; ++a) {
      if (s.contains(a)) continue;
      buf.clear();
      auto pos = std::lower_bound(s.begin(), s.end(), a);
      buf.insert(buf.end(), s.begin(), pos);
      buf.push_back(a);
      buf.insert(buf.end(), pos, s.end());
      probe.assign_sorted(buf);
      const double v = oracle.value(probe);
      if (!found || v > best) {
        best = v;
        pick = a;
        found = true;
      }
    }
    s = s.with(pick);
    push_trace(r, oracle, q0, ElemSet{pick}, best, s);
  }
  r.solution = s;
  r.true_value = true_value(oracle, s);
  r.queries = oracle.queries() - q0;
  return r;
}

RunResult smooth_greedy(Oracle& oracle, unsigned k, const ElemSet& h,
                        const ElemSet& r0, const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (!h.disjoint_with(r0))
    throw std::invalid_argument("smoothing set and initialization overlap");
  if (h.size() + r0.size() >= k)
    throw ConfigError("|H| + |R| must stay below k");
  if (k > g.n) throw ConfigError("budget k exceeds the ground set");
  const std::uint64_t q0 = oracle.queries();
  RunResult result;

  std::vector<std::vector<ElemSet>> collections;
  if (cfg.correlation_d > 0)
    collections = bundle_collections(h, cfg.correlation_d, result);
  const SubsetCaps caps = subset_caps(cfg);

  ElemSet s = r0;
  const std::size_t target = k - h.size();
  unsigned iteration = 0;
  while (s.size() < target) {
    Best best;
    for (ElemId a = 0; a < g.n; ++a) {
      if (h.contains(a) || s.contains(a)) continue;
      const Neighborhood nb =
          cfg.correlation_d > 0
              ? Neighborhood::bundle_subsets(
                    collections[iteration % collections.size()], a)
              : Neighborhood::subsets(h, a, caps);
      best.offer(smooth_value(oracle, s, nb), ElemSet{a});
    }
    if (!best.valid) throw ConfigError("no candidates left outside H");
    s = s.set_union(best.set);
    push_trace(result, oracle, q0, best.set, best.score, s);
    ++iteration;
  }
  result.solution = s;
  result.true_value = true_value(oracle, s);
  result.queries = oracle.queries() - q0;
  return result;
}

ElemSet smooth_compare(Oracle& oracle, const ElemSet& ti, const ElemSet& tj,
                       const ElemSet& h, bool powerset) {
  if (!h.disjoint_with(ti) || !h.disjoint_with(tj))
    throw std::invalid_argument("comparison smoothing set overlaps a contender");
  if (h.size() >= 63) throw BudgetError("comparison smoothing set too large");
  const std::uint64_t full = std::uint64_t{1} << h.size();
  const std::uint64_t total = powerset ? full : full - 1;  // proper subsets incl. ∅
  std::uint64_t wins_i = 0;
  std::vector<ElemId> buf;
  ElemSet hsub, qi, qj;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    buf.clear();
    for (std::size_t b = 0; b < h.size(); ++b)
      if (mask & (std::uint64_t{1} << b)) buf.push_back(h[b]);
    hsub.assign_sorted(buf);
    ElemSet::union_into(ti, hsub, qi);
    ElemSet::union_into(tj, hsub, qj);
    const double vi = oracle.value(qi);
    const double vj = oracle.value(qj);
    if (vi >= vj) ++wins_i;
  }
  return 2 * wins_i >= total ? ti : tj;
}

unsigned auto_smoothing_size(unsigned n, unsigned k, const AlgoCaps& caps) {
  const double logn = log2_clamped(n);
  double ell = (k >= 2400.0 * logn) ? std::ceil(25.0 * logn)
                                    : std::ceil(33.0 * log2_clamped(logn));
  const double cap = std::floor(std::log2(static_cast<double>(
      std::max<std::uint64_t>(2, caps.subset_cap))));
  ell = std::min(ell, cap);
  unsigned l = static_cast<unsigned>(std::max(1.0, ell));
  if (l >= k) l = std::max(1u, k / 2);  // desk-scale shrink; callers log it
  return l;
}

namespace {

double normalized_slick_delta(double eps, const AlgoConfig& cfg, unsigned* m_out) {
  double delta = cfg.slick_delta.value_or(eps / 6.0);
  if (!(delta > 0)) throw ConfigError("slick partition parameter must be positive");
  const unsigned m = std::max<unsigned>(2, static_cast<unsigned>(
      std::ceil(1.0 / delta - 1e-12)));
  *m_out = m;
  return 1.0 / m;
}

}  // namespace

RunResult slick_greedy(Oracle& oracle, unsigned k, double eps,
                       const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (k > g.n) throw ConfigError("budget k exceeds the ground set");
  const std::uint64_t q0 = oracle.queries();
  RunResult result;

  unsigned m = 0;
  normalized_slick_delta(eps, cfg, &m);
  unsigned ell = cfg.smoothing_size.value_or(auto_smoothing_size(g.n, k, cfg.caps));
  if (static_cast<std::uint64_t>(m) * ell >= k) {
    const unsigned shrunk = (k - 1) / m;
    if (shrunk == 0)
      throw ConfigError("k too small for " + std::to_string(m) +
                        " disjoint smoothing sets");
    result.notes.push_back("smoothing size shrunk from " + std::to_string(ell) +
                           " to " + std::to_string(shrunk) +
                           " to fit the partition budget");
    ell = shrunk;
  }
  const double threshold = 3168.0 * log2_clamped(log2_clamped(g.n)) / (eps * eps);
  if (static_cast<double>(k) < threshold)
    result.notes.push_back("outside the guaranteed regime (k < " +
                           std::to_string(threshold) + "); proceeding anyway");
  if (static_cast<std::uint64_t>(m) * ell > g.n)
    throw ConfigError("ground set too small for the smoothing partition");

  // disjoint equal-size smoothing sets over the lowest-indexed elements
  std::vector<ElemSet> hs(m);
  for (unsigned j = 0; j < m; ++j)
    hs[j] = ElemSet::range(j * ell, (j + 1) * ell);
  result.notes.push_back("partitions: " + std::to_string(m) + " smoothing sets of size " +
                         std::to_string(ell) + " (delta = 1/" + std::to_string(m) + ")");

  // Trace layout: round 0 pushes {T_0}; every later round pushes
  // {T_j}, {H_ij}, {winner after the comparison}.
  ElemSet winner;
  for (unsigned j = 0; j < m; ++j) {
    ElemSet rj;
    for (unsigned i = 0; i < m; ++i)
      if (i != j) rj = rj.set_union(hs[i]);
    RunResult sub = smooth_greedy(oracle, k, hs[j], rj, cfg);
    for (auto& note : sub.notes) result.notes.push_back(std::move(note));
    const ElemSet tj = sub.solution.set_union(hs[j]);
    push_trace(result, oracle, q0, tj, 0.0, tj);
    if (j == 0) {
      winner = tj;
    } else {
      // fresh comparison smoothing set, disjoint from both contenders
      std::vector<ElemId> fresh;
      const ElemSet used = winner.set_union(tj);
      for (ElemId e = 0; e < g.n && fresh.size() < ell; ++e)
        if (!used.contains(e)) fresh.push_back(e);
      if (fresh.size() < ell)
        throw ConfigError("ground set too small for a disjoint comparison set");
      const ElemSet hij = ElemSet::from_sorted(std::move(fresh));
      push_trace(result, oracle, q0, hij, 0.0, winner.set_union(tj));
      winner = smooth_compare(oracle, winner, tj, hij, cfg.compare_powerset);
      push_trace(result, oracle, q0, winner, 0.0, winner);
    }
  }
  result.solution = winner;
  result.true_value = true_value(oracle, winner);
  result.queries = oracle.queries() - q0;
  return result;
}

namespace {

// Candidate pool for sampled-mean bundle enumeration: the top `pool` elements
// outside S ranked by noisy singleton value (ties to the lower id).
ElemSet sm_candidate_pool(Oracle& oracle, const ElemSet& s, unsigned pool,
                          GroundSet g) {
  std::vector<std::pair<double, ElemId>> ranked;
  ElemSet probe;
  std::vector<ElemId> buf;
  for (ElemId a = 0; a < g.n; ++a) {
    if (s.contains(a)) continue;
    buf.clear();
    auto pos = std::lower_bound(s.begin(), s.end(), a);
    buf.insert(buf.end(), s.begin(), pos);
    buf.push_back(a);
    buf.insert(buf.end(), pos, s.end());
    probe.assign_sorted(buf);
    ranked.emplace_back(-oracle.value(probe), a);
  }
  std::stable_sort(ranked.begin(), ranked.end());
  std::vector<ElemId> keep;
  for (std::size_t i = 0; i < ranked.size() && i < pool; ++i)
    keep.push_back(ranked[i].second);
  return ElemSet::from_unsorted(std::move(keep));
}

Neighborhood sm_neighborhood(const ElemSet& bundle, const ElemSet& s, GroundSet g,
                             unsigned d) {
  return d > 0 ? Neighborhood::partition_swaps(bundle, s, g, d)
               : Neighborhood::swaps(bundle, s, g);
}

}  // namespace

RunResult sm_greedy(Oracle& oracle, unsigned k, double eps, const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (k > g.n) throw ConfigError("budget k exceeds the ground set");
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  const std::uint64_t q0 = oracle.queries();
  RunResult result;

  unsigned c;
  if (cfg.bundle_size) {
    c = *cfg.bundle_size;
  } else if (static_cast<double>(k) * eps * eps < 16.0) {
    c = k;  // single full-width iteration
    result.notes.push_back("single-iteration mode with c = k");
  } else {
    c = static_cast<unsigned>(std::ceil(16.0 / eps));
  }
  if (c == 0 || c > k)
    throw ConfigError("bundle size " + std::to_string(c) + " outside [1, k]");
  if (cfg.correlation_d > 0 && c % cfg.correlation_d != 0)
    throw ConfigError("bundle size must be a multiple of the correlation width");

  const std::uint64_t budget = resolve_budget(cfg.caps.enumeration_budget);
  const unsigned iters = k / c;
  ElemSet s;
  for (unsigned it = 0; it < iters; ++it) {
    ElemSet pool = cfg.caps.pool > 0
                       ? sm_candidate_pool(oracle, s, cfg.caps.pool, g)
                       : ElemSet::complement(s, g);
    if (cfg.caps.pool > 0 && pool.size() < c)
      pool = ElemSet::complement(s, g);
    if (binomial(pool.size(), c) > budget)
      throw BudgetError("bundle enumeration exceeds budget; enable the candidate pool");
    if (g.n - s.size() < c + std::size_t{1})
      throw ConfigError("not enough elements left for a bundle and its swaps");

    Best best;
    for_each_combination(pool, c, [&](const ElemSet& bundle) {
      const Neighborhood nb = sm_neighborhood(bundle, s, g, cfg.correlation_d);
      if (nb.empty()) return;
      best.offer(smooth_value(oracle, s, nb), bundle);
    });
    if (!best.valid) throw ConfigError("no evaluable bundle found");

    // refinement: single noisy evaluations over the winning bundle's swaps
    const Neighborhood nb = sm_neighborhood(best.set, s, g, cfg.correlation_d);
    Best refined;
    ElemSet query;
    nb.for_each([&](const ElemSet& x) {
      ElemSet::union_into(s, x, query);
      refined.offer(oracle.value(query), x);
    });
    s = s.set_union(refined.set);
    push_trace(result, oracle, q0, refined.set, refined.score, s);
  }
  result.solution = s;
  result.true_value = true_value(oracle, s);
  result.queries = oracle.queries() - q0;
  return result;
}

RunResult exp_small_greedy(Oracle& oracle, unsigned k, std::uint64_t seed,
                           const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (k == 0 || k > g.n) throw ConfigError("budget k outside [1, n]");
  const std::uint64_t q0 = oracle.queries();
  RunResult result;
  if (k == g.n) {
    result.solution = ElemSet::prefix(g.n);
    result.true_value = true_value(oracle, result.solution);
    return result;
  }
  if (binomial(g.n, k) > resolve_budget(cfg.caps.enumeration_budget))
    throw BudgetError("k-set enumeration exceeds budget");

  Best best;
  const ElemSet all = ElemSet::prefix(g.n);
  for_each_combination(all, k, [&](const ElemSet& b) {
    best.offer(smooth_value(oracle, ElemSet{}, Neighborhood::extensions(b, g)), b);
  });

  Rng rng(hash_combine(seed, 0xe5));
  const ElemSet rest = ElemSet::complement(best.set, g);
  const ElemId x = rest[rng.below(rest.size())];
  const ElemSet u = best.set.with(x);
  const std::size_t drop = rng.below(u.size());
  result.solution = u.without(u[drop]);
  push_trace(result, oracle, q0, result.solution, best.score, result.solution);
  result.true_value = true_value(oracle, result.solution);
  result.queries = oracle.queries() - q0;
  return result;
}

RunResult whp_small_greedy(Oracle& oracle, unsigned k, const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (k == 0 || k > g.n) throw ConfigError("budget k outside [1, n]");
  const std::uint64_t q0 = oracle.queries();
  if (binomial(g.n, k - 1) > resolve_budget(cfg.caps.enumeration_budget))
    throw BudgetError("(k-1)-set enumeration exceeds budget");
  RunResult result;

  Best best;
  const ElemSet all = ElemSet::prefix(g.n);
  if (k == 1) {
    best.offer(0.0, ElemSet{});
  } else {
    for_each_combination(all, k - 1, [&](const ElemSet& b) {
      best.offer(smooth_value(oracle, ElemSet{}, Neighborhood::extensions(b, g)), b);
    });
  }
  const ElemSet a = best.set;
  push_trace(result, oracle, q0, a, best.score, a);

  Best completed;
  ElemSet probe;
  for (ElemId x = 0; x < g.n; ++x) {
    if (a.contains(x)) continue;
    probe = a.with(x);
    completed.offer(oracle.value(probe), probe);
  }
  result.solution = completed.set;
  push_trace(result, oracle, q0, completed.set, completed.score, completed.set);
  result.true_value = true_value(oracle, result.solution);
  result.queries = oracle.queries() - q0;
  return result;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::slick: return "slick";
    case Regime::sm: return "sm";
    case Regime::very_small: return "very_small";
  }
  return "?";
}

RegimeChoice select_regime(unsigned n, unsigned k, double eps) {
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  RegimeChoice choice;
  choice.delta = eps / 6.0;
  choice.bundle_size = static_cast<unsigned>(std::ceil(16.0 / eps));
  choice.smoothing_size = auto_smoothing_size(n, std::max(k, 1u));
  const double slick_floor = 3168.0 * log2_clamped(log2_clamped(n)) / (eps * eps);
  if (static_cast<double>(k) >= slick_floor)
    choice.tag = Regime::slick;
  else if (k >= choice.bundle_size)
    choice.tag = Regime::sm;
  else
    choice.tag = Regime::very_small;
  return choice;
}

RunResult run_algorithm(const std::string& name, Oracle& oracle,
                        const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (name == "greedy") return greedy(oracle, cfg.k);
  if (name == "smooth") {
    unsigned ell =
        cfg.smoothing_size.value_or(auto_smoothing_size(g.n, cfg.k, cfg.caps));
    if (ell >= cfg.k) ell = std::max(1u, cfg.k / 2);
    const ElemSet h = ElemSet::prefix(ell);
    RunResult r = smooth_greedy(oracle, cfg.k, h, ElemSet{}, cfg);
    r.solution = r.solution.set_union(h);
    r.true_value = oracle.base().eval(r.solution);
    return r;
  }
  if (name == "slick") return slick_greedy(oracle, cfg.k, cfg.eps, cfg);
  if (name == "sm") return sm_greedy(oracle, cfg.k, cfg.eps, cfg);
  if (name == "exp_small") return exp_small_greedy(oracle, cfg.k, cfg.seed, cfg);
  if (name == "whp_small") return whp_small_greedy(oracle, cfg.k, cfg);
  if (name == "boosted")
    return boosted_opt(oracle, cfg.k, cfg.boost_t, cfg.boost_inner, cfg);
  if (name == "auto") {
    const RegimeChoice rc = select_regime(g.n, cfg.k, cfg.eps);
    RunResult r;
    switch (rc.tag) {
      case Regime::slick: r = slick_greedy(oracle, cfg.k, cfg.eps, cfg); break;
      case Regime::sm: r = sm_greedy(oracle, cfg.k, cfg.eps, cfg); break;
      case Regime::very_small: r = whp_small_greedy(oracle, cfg.k, cfg); break;
    }
    r.notes.push_back(std::string("regime: ") + to_string(rc.tag));
    return r;
  }
  throw ConfigError("unknown algorithm \"" + name + "\"");
}

RunResult boosted_opt(Oracle& oracle, unsigned k, std::uint64_t t,
                      const std::string& inner, const AlgoConfig& cfg) {
  const GroundSet g = oracle.base().ground();
  if (k == 0 || k > g.n) throw ConfigError("budget k outside [1, n]");
  if (t == 0) throw ConfigError("need at least one probe");
  if (inner == "boosted") throw ConfigError("boosted cannot nest itself");
  unsigned r = 0;
  while (binomial(g.n - k, r) < t) {
    ++r;
    if (r >= k) throw ConfigError("no feasible extension width r for this probe count");
  }
  const std::uint64_t q0 = oracle.queries();
  AlgoConfig inner_cfg = cfg;
  inner_cfg.k = k - r;
  RunResult base = run_algorithm(inner, oracle, inner_cfg);
  const ElemSet grown = base.solution;

  Best best;
  std::uint64_t probes = 0;
  ElemSet query;
  const ElemSet rest = ElemSet::complement(grown, g);
  if (r == 0) {
    best.offer(oracle.value(grown), grown);
    probes = 1;
  } else {
    for_each_combination(rest, r, [&](const ElemSet& ext) {
      if (probes >= t) return;
      ElemSet::union_into(grown, ext, query);
      best.offer(oracle.value(query), query);
      ++probes;
    });
  }
  RunResult result;
  result.solution = best.set;
  result.true_value = oracle.base().eval(best.set);
  result.queries = oracle.queries() - q0;
  result.trace = std::move(base.trace);
  result.notes = std::move(base.notes);
  result.notes.push_back("boosted objective: observed noisy value; r = " +
                         std::to_string(r));
  return result;
}

std::pair<ElemSet, double> brute_force_opt(const SetFunction& f, unsigned k,
                                           std::uint64_t budget) {
  const GroundSet g = f.ground();
  if (k > g.n) throw ConfigError("budget k exceeds the ground set");
  const std::uint64_t limit = resolve_budget(budget);
  if (binomial(g.n, k) > limit)
    throw BudgetError("brute force over C(" + std::to_string(g.n) + "," +
                      std::to_string(k) + ") sets exceeds budget " +
                      std::to_string(limit));
  ElemSet best_set;
  double best = f.eval(ElemSet{});
  const ElemSet all = ElemSet::prefix(g.n);
  for (unsigned size = 1; size <= k; ++size) {
    for_each_combination(all, size, [&](const ElemSet& s) {
      const double v = f.eval(s);
      if (v > best) {
        best = v;
        best_set = s;
      }
    });
  }
  return {best_set, best};
}

}  // namespace nsm
