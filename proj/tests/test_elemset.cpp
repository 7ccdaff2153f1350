#include <doctest.h>

#include <set>

#include "nsm/elemset.hpp"

using namespace nsm;

TEST_CASE("canonical form is sorted and duplicate-free") {
  const ElemSet s = ElemSet::from_unsorted({5, 1, 3, 1, 5});
  CHECK(s.size() == 3);
  CHECK(s.elems() == std::vector<ElemId>{1, 3, 5});
  CHECK(s == ElemSet{1, 3, 5});
}

TEST_CASE("set algebra") {
  const ElemSet a{0, 2, 4};
  const ElemSet b{2, 3};
  CHECK(a.set_union(b) == ElemSet{0, 2, 3, 4});
  CHECK(a.set_minus(b) == ElemSet{0, 4});
  CHECK(a.set_intersect(b) == ElemSet{2});
  CHECK(a.symmetric_difference_size(b) == 3);
  CHECK(a.with(3) == ElemSet{0, 2, 3, 4});
  CHECK(a.with(2) == a);
  CHECK(a.without(2) == ElemSet{0, 4});
  CHECK(ElemSet::complement(b, GroundSet(5)) == ElemSet{0, 1, 4});
  CHECK(ElemSet{0, 2}.is_subset_of(a));
  CHECK(!a.is_subset_of(b));
  CHECK(a.disjoint_with(ElemSet{1, 5}));
}

TEST_CASE("canonical key is identical across construction orders and unique on small universes") {
  CHECK(ElemSet::from_unsorted({3, 1, 2}).key() == ElemSet{1, 2, 3}.key());
  // all 2^12 subsets of a 12-element universe get distinct keys
  std::set<std::uint64_t> keys;
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    std::vector<ElemId> v;
    for (unsigned i = 0; i < 12; ++i)
      if (mask & (1u << i)) v.push_back(i);
    keys.insert(ElemSet::from_sorted(std::move(v)).key());
  }
  CHECK(keys.size() == (1u << 12));
}

TEST_CASE("lexicographic ordering on canonical lists") {
  CHECK(ElemSet{0, 5} < ElemSet{1, 2});
  CHECK(ElemSet{0, 1} < ElemSet{0, 2});
  CHECK(ElemSet{0} < ElemSet{0, 1});
  CHECK(!(ElemSet{1} < ElemSet{1}));
}

TEST_CASE("binomial coefficients saturate instead of overflowing") {
  CHECK(binomial(15, 5) == 3003);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 7) == 0);
  CHECK(binomial(4096, 64) == UINT64_MAX);
}

TEST_CASE("combination enumeration is lexicographic and complete") {
  std::vector<ElemSet> seen;
  for_each_combination(ElemSet{1, 4, 7, 9}, 2,
                       [&](const ElemSet& s) { seen.push_back(s); });
  REQUIRE(seen.size() == 6);
  CHECK(seen.front() == ElemSet{1, 4});
  CHECK(seen.back() == ElemSet{7, 9});
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("rng stream is deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(43);
  CHECK(Rng(42).next() != c.next());
}
