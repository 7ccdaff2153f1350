#include "nsm/smoothing.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

namespace nsm {

Neighborhood Neighborhood::subsets(const ElemSet& h, ElemId a, const SubsetCaps& caps) {
  if (h.contains(a))
    throw std::invalid_argument("subset neighborhood anchor must lie outside H");
  Neighborhood nb;
  nb.kind_ = Kind::subset_of_h;
  nb.a_ = h;
  nb.anchor_ = a;
  if (h.size() >= 63)
    throw BudgetError("smoothing set too large to index subsets");
  const std::uint64_t full = std::uint64_t{1} << h.size();
  const std::uint64_t sample = std::min(caps.sample_size, full);
  if (full > caps.materialize_cap && sample < full) {
    if (sample == 0)
      throw BudgetError("subset neighborhood above cap and sampling disabled");
    // uniform sample of distinct subset masks
    Rng rng(hash_combine(hash_combine(caps.seed, h.key()), a));
    std::unordered_set<std::uint64_t> seen;
    nb.sampled_masks_.reserve(sample);
    while (nb.sampled_masks_.size() < sample) {
      const std::uint64_t m = rng.next() & (full - 1);
      if (seen.insert(m).second) nb.sampled_masks_.push_back(m);
    }
    nb.count_ = nb.sampled_masks_.size();
  } else {
    nb.count_ = full;
  }
  return nb;
}

Neighborhood Neighborhood::swaps(const ElemSet& a, const ElemSet& s, GroundSet g) {
  if (!a.disjoint_with(s))
    throw std::invalid_argument("swap neighborhood requires A and S disjoint");
  if (a.empty()) throw std::invalid_argument("swap neighborhood of an empty bundle");
  Neighborhood nb;
  nb.kind_ = Kind::swap;
  nb.a_ = a;
  nb.s_ = s;
  nb.candidates_ = ElemSet::complement(a.set_union(s), g);
  nb.count_ = static_cast<std::uint64_t>(a.size()) * nb.candidates_.size();
  return nb;
}

Neighborhood Neighborhood::extensions(const ElemSet& a, GroundSet g) {
  if (a.size() >= g.n)
    throw std::invalid_argument("extension neighborhood of the full ground set");
  Neighborhood nb;
  nb.kind_ = Kind::extension;
  nb.a_ = a;
  nb.candidates_ = ElemSet::complement(a, g);
  nb.count_ = nb.candidates_.size();
  return nb;
}

Neighborhood Neighborhood::bundle_subsets(std::vector<ElemSet> bundles, ElemId a) {
  if (bundles.size() >= 63)
    throw BudgetError("too many bundles to index sub-collections");
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (bundles[i].contains(a))
      throw std::invalid_argument("bundle neighborhood anchor inside a bundle");
    for (std::size_t j = i + 1; j < bundles.size(); ++j)
      if (!bundles[i].disjoint_with(bundles[j]))
        throw std::invalid_argument("bundles must be pairwise disjoint");
  }
  Neighborhood nb;
  nb.kind_ = Kind::bundle_subset;
  nb.bundles_ = std::move(bundles);
  nb.anchor_ = a;
  nb.count_ = std::uint64_t{1} << nb.bundles_.size();
  return nb;
}

Neighborhood Neighborhood::partition_swaps(const ElemSet& a, const ElemSet& s,
                                           GroundSet g, unsigned d) {
  if (d == 0) throw std::invalid_argument("partition width must be positive");
  if (!a.disjoint_with(s))
    throw std::invalid_argument("partition swaps require A and S disjoint");
  if (a.size() % d != 0)
    throw std::invalid_argument("partition width must divide the bundle size");
  Neighborhood nb;
  nb.kind_ = Kind::partition_swap;
  nb.a_ = a;
  nb.s_ = s;
  nb.candidates_ = ElemSet::complement(a.set_union(s), g);
  nb.block_ = d;
  const std::uint64_t nq = a.size() / d;
  const std::uint64_t np = nb.candidates_.size() / d;  // ragged tail unused
  nb.count_ = nq * np;
  return nb;
}

std::uint64_t Neighborhood::size() const { return count_; }

void Neighborhood::for_each(const std::function<void(const ElemSet&)>& fn) const {
  ElemSet member;
  std::vector<ElemId> buf;
  switch (kind_) {
    case Kind::subset_of_h: {
      auto emit_mask = [&](std::uint64_t mask) {
        buf.clear();
        for (std::size_t i = 0; i < a_.size(); ++i)
          if (mask & (std::uint64_t{1} << i)) buf.push_back(a_[i]);
        buf.push_back(anchor_);
        std::sort(buf.begin(), buf.end());
        member.assign_sorted(buf);
        fn(member);
      };
      if (!sampled_masks_.empty()) {
        for (std::uint64_t m : sampled_masks_) emit_mask(m);
      } else {
        for (std::uint64_t m = 0; m < count_; ++m) emit_mask(m);
      }
      return;
    }
    case Kind::swap: {
      std::vector<ElemId> base;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        base.clear();
        for (std::size_t t = 0; t < a_.size(); ++t)
          if (t != i) base.push_back(a_[t]);
        for (ElemId j : candidates_) {
          buf.clear();
          auto pos = std::lower_bound(base.begin(), base.end(), j);
          buf.insert(buf.end(), base.begin(), pos);
          buf.push_back(j);
          buf.insert(buf.end(), pos, base.end());
          member.assign_sorted(buf);
          fn(member);
        }
      }
      return;
    }
    case Kind::extension: {
      for (ElemId x : candidates_) {
        buf.clear();
        auto pos = std::lower_bound(a_.begin(), a_.end(), x);
        buf.insert(buf.end(), a_.begin(), pos);
        buf.push_back(x);
        buf.insert(buf.end(), pos, a_.end());
        member.assign_sorted(buf);
        fn(member);
      }
      return;
    }
    case Kind::bundle_subset: {
      const std::uint64_t full = std::uint64_t{1} << bundles_.size();
      for (std::uint64_t mask = 0; mask < full; ++mask) {
        buf.clear();
        buf.push_back(anchor_);
        for (std::size_t i = 0; i < bundles_.size(); ++i)
          if (mask & (std::uint64_t{1} << i))
            buf.insert(buf.end(), bundles_[i].begin(), bundles_[i].end());
        std::sort(buf.begin(), buf.end());
        member.assign_sorted(buf);
        fn(member);
      }
      return;
    }
    case Kind::partition_swap: {
      const std::size_t nq = a_.size() / block_;
      const std::size_t np = candidates_.size() / block_;
      for (std::size_t qi = 0; qi < nq; ++qi) {
        for (std::size_t pj = 0; pj < np; ++pj) {
          buf.clear();
          for (std::size_t i = 0; i < a_.size(); ++i)
            if (i / block_ != qi) buf.push_back(a_[i]);
          for (std::size_t i = 0; i < block_; ++i)
            buf.push_back(candidates_[pj * block_ + i]);
          std::sort(buf.begin(), buf.end());
          member.assign_sorted(buf);
          fn(member);
        }
      }
      return;
    }
  }
}

std::vector<ElemSet> Neighborhood::materialize() const {
  std::vector<ElemSet> out;
  out.reserve(size());
  for_each([&](const ElemSet& m) { out.push_back(m); });
  return out;
}

double smooth_value(const std::function<double(const ElemSet&)>& eval,
                    const ElemSet& s, const Neighborhood& nb) {
  if (nb.empty()) throw std::invalid_argument("smooth value of an empty neighborhood");
  KahanSum sum;
  ElemSet query;
  nb.for_each([&](const ElemSet& x) {
    ElemSet::union_into(s, x, query);
    sum.add(eval(query));
  });
  return sum.total() / static_cast<double>(nb.size());
}

double smooth_value(Oracle& oracle, const ElemSet& s, const Neighborhood& nb) {
  return smooth_value([&](const ElemSet& q) { return oracle.value(q); }, s, nb);
}

double smooth_value(const SetFunction& f, const ElemSet& s, const Neighborhood& nb) {
  return smooth_value([&](const ElemSet& q) { return f.eval(q); }, s, nb);
}

double smooth_marginal(const SetFunction& f, const ElemSet& s, const Neighborhood& nb) {
  if (nb.empty())
    throw std::invalid_argument("smooth marginal of an empty neighborhood");
  const double base = f.eval(s);
  KahanSum sum;
  ElemSet query;
  nb.for_each([&](const ElemSet& x) {
    ElemSet::union_into(s, x, query);
    sum.add(f.eval(query) - base);
  });
  return sum.total() / static_cast<double>(nb.size());
}

double variation(const SetFunction& f, const ElemSet& s, const Neighborhood& nb) {
  if (nb.empty()) throw std::invalid_argument("variation of an empty neighborhood");
  const double base = f.eval(s);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  ElemSet query;
  nb.for_each([&](const ElemSet& x) {
    ElemSet::union_into(s, x, query);
    const double m = f.eval(query) - base;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  });
  if (lo <= 0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace nsm
