#pragma once

#include <functional>
#include <vector>

#include "nsm/noise.hpp"
#include "nsm/setfn.hpp"

namespace nsm {

/// Materialization/sampling bounds for powerset-shaped neighborhoods.  Above
/// materialize_cap members, enumeration switches to uniform sampling without
/// replacement of sample_size subsets (the estimator stays an unbiased mean).
struct SubsetCaps {
  std::uint64_t materialize_cap = std::uint64_t{1} << 20;
  std::uint64_t sample_size = std::uint64_t{1} << 16;
  std::uint64_t seed = 0;
};

/// Finite family H(A) of query sets with averaging semantics.  Members are the
/// sets X to be joined with the solution prefix S before querying.  Swap
/// neighborhoods stream; materialize() is for tests.  Enumeration order is
/// deterministic and part of the reproducibility contract.
class Neighborhood {
 public:
  enum class Kind { subset_of_h, swap, extension, bundle_subset, partition_swap };

  /// All H' ∪ {a} for H' ⊆ H (full powerset, 2^|H| members; sampled above cap).
  static Neighborhood subsets(const ElemSet& h, ElemId a, const SubsetCaps& caps = {});

  /// All (A \ {a_i}) ∪ {a_j} for a_i ∈ A, a_j ∉ S ∪ A; exactly c·(n-c-|S|)
  /// members.  pre: A ∩ S = ∅, A nonempty.
  static Neighborhood swaps(const ElemSet& a, const ElemSet& s, GroundSet g);

  /// All A ∪ {x} for x ∉ A; n - |A| members.  pre: |A| < n.
  static Neighborhood extensions(const ElemSet& a, GroundSet g);

  /// Unions of sub-collections of disjoint bundles, each joined with {a};
  /// 2^(#bundles) members.  Bundles wider than the correlation radius keep the
  /// multipliers inside one average independent.
  static Neighborhood bundle_subsets(std::vector<ElemSet> bundles, ElemId a);

  /// Block swaps (A \ Q_i) ∪ P_j where Q blocks partition A and P blocks
  /// partition the complement of S ∪ A, all of width d.  pre: d divides |A|.
  static Neighborhood partition_swaps(const ElemSet& a, const ElemSet& s,
                                      GroundSet g, unsigned d);

  Kind kind() const { return kind_; }
  std::uint64_t size() const;
  bool empty() const { return size() == 0; }

  /// Visits every member.  The reference aliases an internal buffer and is
  /// invalidated by the next iteration.
  void for_each(const std::function<void(const ElemSet&)>& fn) const;

  std::vector<ElemSet> materialize() const;

 private:
  Neighborhood() = default;

  Kind kind_ = Kind::extension;
  ElemSet a_;           // the candidate set (or anchor element for subset kinds)
  ElemSet s_;           // context solution (swap kinds)
  ElemSet candidates_;  // replacement pool (swap/extension kinds)
  std::vector<ElemSet> bundles_;
  std::vector<std::uint64_t> sampled_masks_;  // engaged when subset kind is sampled
  ElemId anchor_ = 0;
  unsigned block_ = 0;  // partition block width
  std::uint64_t count_ = 0;
};

/// Arithmetic mean of eval(S ∪ X) over members X (compensated summation).
/// With an oracle this is the noisy smooth value; with the bare function the
/// exact one.  Throws on an empty neighborhood.
double smooth_value(const std::function<double(const ElemSet&)>& eval,
                    const ElemSet& s, const Neighborhood& nb);
double smooth_value(Oracle& oracle, const ElemSet& s, const Neighborhood& nb);
double smooth_value(const SetFunction& f, const ElemSet& s, const Neighborhood& nb);

/// Mean of f_S(X) = f(S ∪ X) − f(S) over members (f(S) subtracted per member).
double smooth_marginal(const SetFunction& f, const ElemSet& s, const Neighborhood& nb);

/// max over min member marginal f_S(X); a non-positive minimum reports as
/// +infinity.
double variation(const SetFunction& f, const ElemSet& s, const Neighborhood& nb);

}  // namespace nsm
