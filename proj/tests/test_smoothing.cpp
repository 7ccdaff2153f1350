#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "nsm/smoothing.hpp"

using namespace nsm;

namespace {

std::set<ElemSet> as_set(const std::vector<ElemSet>& v) {
  return std::set<ElemSet>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("subset neighborhood") {
  SUBCASE("powerset of a two-element smoothing set") {
    const auto nb = Neighborhood::subsets(ElemSet{1, 2}, 0);
    CHECK(nb.size() == 4);
    CHECK(as_set(nb.materialize()) ==
          std::set<ElemSet>{ElemSet{0}, ElemSet{0, 1}, ElemSet{0, 2}, ElemSet{0, 1, 2}});
  }
  SUBCASE("empty smoothing set gives the bare anchor") {
    const auto nb = Neighborhood::subsets(ElemSet{}, 0);
    CHECK(nb.size() == 1);
    CHECK(nb.materialize() == std::vector<ElemSet>{ElemSet{0}});
  }
  SUBCASE("ten elements expand to 1024 members") {
    CHECK(Neighborhood::subsets(ElemSet::prefix(10), 12).size() == 1024);
  }
  SUBCASE("anchor inside H is rejected") {
    CHECK_THROWS_AS(Neighborhood::subsets(ElemSet{1, 2}, 2), std::invalid_argument);
  }
  SUBCASE("cap switches to distinct uniform samples, deterministically") {
    SubsetCaps caps;
    caps.materialize_cap = 8;
    caps.sample_size = 5;
    caps.seed = 42;
    const auto nb = Neighborhood::subsets(ElemSet::prefix(6), 9, caps);
    CHECK(nb.size() == 5);
    const auto members = nb.materialize();
    CHECK(as_set(members).size() == 5);  // distinct
    for (const ElemSet& m : members) CHECK(m.contains(9));
    const auto again = Neighborhood::subsets(ElemSet::prefix(6), 9, caps).materialize();
    CHECK(members == again);
    SubsetCaps no_sampling = caps;
    no_sampling.sample_size = 0;
    CHECK_THROWS_AS(Neighborhood::subsets(ElemSet::prefix(6), 9, no_sampling),
                    BudgetError);
  }
}

TEST_CASE("swap neighborhood") {
  SUBCASE("n=4, A={0,1}, S=∅ has the four documented members") {
    const auto nb = Neighborhood::swaps(ElemSet{0, 1}, ElemSet{}, GroundSet(4));
    CHECK(nb.size() == 4);
    CHECK(as_set(nb.materialize()) ==
          std::set<ElemSet>{ElemSet{1, 2}, ElemSet{1, 3}, ElemSet{0, 2}, ElemSet{0, 3}});
  }
  SUBCASE("no replacement candidates leaves an empty neighborhood") {
    const auto nb = Neighborhood::swaps(ElemSet{0, 1}, ElemSet{2}, GroundSet(3));
    CHECK(nb.size() == 0);
    CHECK_THROWS_AS(
        smooth_value(SetFunction::additive({1, 1, 1}), ElemSet{2}, nb),
        std::invalid_argument);
  }
  SUBCASE("A overlapping S is rejected") {
    CHECK_THROWS_AS(Neighborhood::swaps(ElemSet{0}, ElemSet{0}, GroundSet(3)),
                    std::invalid_argument);
  }
  SUBCASE("cardinality matches c(n-c-s) on random shapes") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const ElemId n = 6 + static_cast<ElemId>(rng.below(30));
      const unsigned c = 1 + static_cast<unsigned>(rng.below(4));
      const unsigned s_size = static_cast<unsigned>(rng.below(3));
      std::vector<ElemId> ids(n);
      for (ElemId i = 0; i < n; ++i) ids[i] = i;
      for (ElemId i = 0; i < n; ++i) std::swap(ids[i], ids[rng.below(n)]);
      const ElemSet a = ElemSet::from_unsorted({ids.begin(), ids.begin() + c});
      const ElemSet s =
          ElemSet::from_unsorted({ids.begin() + c, ids.begin() + c + s_size});
      const auto nb = Neighborhood::swaps(a, s, GroundSet(n));
      CHECK(nb.size() == static_cast<std::uint64_t>(c) * (n - c - s_size));
      const auto members = nb.materialize();
      CHECK(as_set(members).size() == members.size());
      for (const ElemSet& m : members) CHECK(m.size() == c);
      // closed forms of the sibling kinds on the same shape
      CHECK(Neighborhood::extensions(a, GroundSet(n)).size() == n - c);
      CHECK(Neighborhood::subsets(s, a[0], SubsetCaps{}).size() ==
            std::uint64_t{1} << s.size());
    }
  }
}

TEST_CASE("extension neighborhood") {
  CHECK(as_set(Neighborhood::extensions(ElemSet{0}, GroundSet(3)).materialize()) ==
        std::set<ElemSet>{ElemSet{0, 1}, ElemSet{0, 2}});
  CHECK(as_set(Neighborhood::extensions(ElemSet{}, GroundSet(3)).materialize()) ==
        std::set<ElemSet>{ElemSet{0}, ElemSet{1}, ElemSet{2}});
  CHECK(Neighborhood::extensions(ElemSet{1, 3}, GroundSet(9)).size() == 7);
  CHECK_THROWS_AS(Neighborhood::extensions(ElemSet{0, 1, 2}, GroundSet(3)),
                  std::invalid_argument);
}

TEST_CASE("bundle-subset neighborhood") {
  const std::vector<ElemSet> bundles = {ElemSet{1, 2}, ElemSet{3, 4}, ElemSet{5, 6}};
  const auto nb = Neighborhood::bundle_subsets(bundles, 0);
  CHECK(nb.size() == 8);
  const auto members = nb.materialize();
  CHECK(as_set(members).size() == 8);
  for (const ElemSet& m : members) {
    CHECK(m.contains(0));
    CHECK((m.size() - 1) % 2 == 0);  // whole bundles only
  }
  // any two members differ by at least one full bundle
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      CHECK(members[i].symmetric_difference_size(members[j]) >= 2);
  CHECK_THROWS_AS(Neighborhood::bundle_subsets({ElemSet{1}, ElemSet{1, 2}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Neighborhood::bundle_subsets({ElemSet{0, 1}}, 0),
                  std::invalid_argument);
}

TEST_CASE("partition-swap neighborhood") {
  // A = {0,1,2,3}, S = {8,9}, d = 2 over n = 12
  const ElemSet a{0, 1, 2, 3};
  const ElemSet s{8, 9};
  const auto nb = Neighborhood::partition_swaps(a, s, GroundSet(12), 2);
  // 2 blocks in A, complement {4,5,6,7,10,11} gives 3 blocks
  CHECK(nb.size() == 6);
  const auto members = nb.materialize();
  CHECK(as_set(members).size() == 6);
  for (const ElemSet& m : members) {
    CHECK(m.size() == 4);
    CHECK(m.disjoint_with(s));
  }
  // distinct members are farther than d apart, so multipliers stay independent
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      CHECK(members[i].symmetric_difference_size(members[j]) > 2);
  CHECK_THROWS_AS(Neighborhood::partition_swaps(ElemSet{0, 1, 2}, s, GroundSet(12), 2),
                  std::invalid_argument);
}

TEST_CASE("smooth values") {
  SUBCASE("single-member mean is the bare evaluation") {
    const SetFunction f = SetFunction::additive({1, 2, 4});
    const auto nb = Neighborhood::subsets(ElemSet{}, 1);
    CHECK(smooth_value(f, ElemSet{2}, nb) == f.eval(ElemSet{1, 2}));
  }
  SUBCASE("extension average of the empty set") {
    const SetFunction f = SetFunction::additive({1, 2, 4});
    const auto nb = Neighborhood::extensions(ElemSet{}, GroundSet(3));
    CHECK(smooth_value(f, ElemSet{}, nb) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("constant(1) noisy smooth value equals the exact one") {
    const SetFunction f = random_coverage(10, 20, 4, 3);
    NoisyOracle o(f, NoiseConfig{}, 5);
    const auto nb = Neighborhood::subsets(ElemSet{1, 2, 3}, 7);
    CHECK(smooth_value(o, ElemSet{0}, nb) == smooth_value(f, ElemSet{0}, nb));
  }
}

TEST_CASE("smooth value and smooth marginal are consistent") {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const ElemId n = 8 + static_cast<ElemId>(rng.below(5));
    const SetFunction f = random_monotone_instance(n, rng.next());
    const ElemSet s{0, 3};
    const ElemSet a{4, 5};
    const auto swap_nb = Neighborhood::swaps(a, s, GroundSet(n));
    const auto ext_nb = Neighborhood::extensions(a, GroundSet(n));
    const auto sub_nb = Neighborhood::subsets(ElemSet{1, 2}, 6);
    for (const auto* nb : {&swap_nb, &ext_nb, &sub_nb}) {
      const double lhs = smooth_value(f, s, *nb) - f.eval(s);
      const double rhs = smooth_marginal(f, s, *nb);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("variation") {
  SUBCASE("equal marginals give exactly one") {
    const SetFunction f = SetFunction::additive({1, 1, 1, 1});
    const auto nb = Neighborhood::extensions(ElemSet{}, GroundSet(4));
    CHECK(variation(f, ElemSet{}, nb) == 1.0);
  }
  SUBCASE("max over min of {1,2,4} is 4") {
    const SetFunction f = SetFunction::additive({1, 2, 4});
    const auto nb = Neighborhood::extensions(ElemSet{}, GroundSet(3));
    CHECK(variation(f, ElemSet{}, nb) == 4.0);
  }
  SUBCASE("non-positive minimum reports infinity") {
    const SetFunction f = SetFunction::unit_demand({1, 1, 1});
    // adding to a set that already holds the max contributes zero
    const auto nb = Neighborhood::extensions(ElemSet{0}, GroundSet(3));
    CHECK(std::isinf(variation(f, ElemSet{0}, nb)));
  }
  SUBCASE("argmax k-set extension neighborhood has variation at most 2") {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
      const ElemId n = 6 + static_cast<ElemId>(rng.below(5));
      const SetFunction f = random_monotone_instance(n, rng.next());
      for (unsigned k : {1u, 2u, 3u}) {
        // brute-force the argmax k-set
        ElemSet best;
        double best_v = -1;
        for_each_combination(ElemSet::prefix(n), k, [&](const ElemSet& s) {
          const double v = f.eval(s);
          if (v > best_v) {
            best_v = v;
            best = s;
          }
        });
        if (best_v <= 0) continue;
        const double var =
            variation(f, ElemSet{}, Neighborhood::extensions(best, GroundSet(n)));
        if (std::isinf(var)) continue;  // zero-marginal member
        CHECK(var <= 2.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("swap-mean sandwich around the best bundle") {
  // (1 - 1/c)·f_S(A*) <= F_S(A*) <= f_S(A*) for A* the argmax c-bundle
  Rng rng(31);
  for (int t = 0; t < 25; ++t) {
    const ElemId n = 9 + static_cast<ElemId>(rng.below(4));
    const SetFunction f = random_monotone_instance(n, rng.next());
    for (unsigned c : {2u, 3u, 4u}) {
      const ElemSet s{static_cast<ElemId>(rng.below(n))};
      ElemSet best;
      double best_m = -1;
      for_each_combination(ElemSet::complement(s, GroundSet(n)), c,
                           [&](const ElemSet& a) {
                             const double m = f.marginal(s, a);
                             if (m > best_m) {
                               best_m = m;
                               best = a;
                             }
                           });
      const auto nb = Neighborhood::swaps(best, s, GroundSet(n));
      const double mean_marginal = smooth_marginal(f, s, nb);
      CHECK(mean_marginal <= best_m + 1e-9);
      CHECK(mean_marginal >= (1.0 - 1.0 / c) * best_m - 1e-9);
    }
  }
}

TEST_CASE("compensated averaging stays exact over large neighborhoods") {
  // 2^18 members with wildly uneven values
  const ElemId n = 20;
  const SetFunction f = SetFunction::custom(
      n,
      [](const ElemSet& s) {
        double v = 0;
        for (ElemId e : s) v += (e == 19) ? 1e12 : 1e-6;
        return v;
      },
      "uneven");
  SubsetCaps caps;
  caps.materialize_cap = std::uint64_t{1} << 20;
  const ElemSet h = ElemSet::prefix(18);
  const auto nb = Neighborhood::subsets(h, 19, caps);
  const double got = smooth_value(f, ElemSet{}, nb);
  // every member holds 19; each of the 18 tiny elements appears in half
  const double expect = 1e12 + 9.0 * 1e-6;
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}
