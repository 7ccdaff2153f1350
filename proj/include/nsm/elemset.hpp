#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsm {

using ElemId = std::uint32_t;

/// Thrown on invalid configuration / parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration exceeds its budget (CLI exit code 3).
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

/// splitmix64 finalizer; bijective on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a + kGolden + mix64(b + kGolden));
}

/// Deterministic splitmix64 stream; used for all internal randomness so runs
/// reproduce bit-identically across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  // m must be > 0; modulo bias is irrelevant at the m used here.
  std::uint64_t below(std::uint64_t m) { return next() % m; }

  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Dense universe {0, ..., n-1}.
struct GroundSet {
  ElemId n = 1;

  explicit GroundSet(ElemId count) : n(count) {
    if (count < 1) throw ConfigError("ground set must contain at least one element");
  }
};

/// Canonical sorted duplicate-free element list.  The canonical form is unique
/// per mathematical set; key() is the 64-bit identity the noise layer hangs
/// multipliers off.
class ElemSet {
 public:
  ElemSet() = default;
  ElemSet(std::initializer_list<ElemId> xs) : e_(xs) { canonicalize(); }

  static ElemSet from_unsorted(std::vector<ElemId> xs) {
    ElemSet s;
    s.e_ = std::move(xs);
    s.canonicalize();
    return s;
  }

  // pre: xs sorted strictly ascending.
  static ElemSet from_sorted(std::vector<ElemId> xs) {
    ElemSet s;
    s.e_ = std::move(xs);
    return s;
  }

  /// {0, 1, ..., count-1}
  static ElemSet prefix(ElemId count) {
    std::vector<ElemId> v(count);
    for (ElemId i = 0; i < count; ++i) v[i] = i;
    return from_sorted(std::move(v));
  }

  static ElemSet range(ElemId lo, ElemId hi) {
    std::vector<ElemId> v;
    v.reserve(hi > lo ? hi - lo : 0);
    for (ElemId i = lo; i < hi; ++i) v.push_back(i);
    return from_sorted(std::move(v));
  }

  std::size_t size() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  ElemId operator[](std::size_t i) const { return e_[i]; }
  const std::vector<ElemId>& elems() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  ElemId max_elem() const { return e_.back(); }

  bool contains(ElemId x) const {
    return std::binary_search(e_.begin(), e_.end(), x);
  }

  ElemSet with(ElemId x) const {
    ElemSet out;
    out.e_.reserve(e_.size() + 1);
    auto it = std::lower_bound(e_.begin(), e_.end(), x);
    out.e_.assign(e_.begin(), it);
    if (it == e_.end() || *it != x) out.e_.push_back(x);
    out.e_.insert(out.e_.end(), it, e_.end());
    return out;
  }

  ElemSet without(ElemId x) const {
    ElemSet out;
    out.e_.reserve(e_.size());
    for (ElemId e : e_)
      if (e != x) out.e_.push_back(e);
    return out;
  }

  ElemSet set_union(const ElemSet& o) const {
    ElemSet out;
    union_into(*this, o, out);
    return out;
  }

  ElemSet set_minus(const ElemSet& o) const {
    ElemSet out;
    std::set_difference(e_.begin(), e_.end(), o.e_.begin(), o.e_.end(),
                        std::back_inserter(out.e_));
    return out;
  }

  ElemSet set_intersect(const ElemSet& o) const {
    ElemSet out;
    std::set_intersection(e_.begin(), e_.end(), o.e_.begin(), o.e_.end(),
                          std::back_inserter(out.e_));
    return out;
  }

  std::size_t intersection_size(const ElemSet& o) const {
    std::size_t cnt = 0;
    auto a = e_.begin();
    auto b = o.e_.begin();
    while (a != e_.end() && b != o.e_.end()) {
      if (*a < *b)
        ++a;
      else if (*b < *a)
        ++b;
      else
        ++cnt, ++a, ++b;
    }
    return cnt;
  }

  std::size_t symmetric_difference_size(const ElemSet& o) const {
    return size() + o.size() - 2 * intersection_size(o);
  }

  bool disjoint_with(const ElemSet& o) const { return intersection_size(o) == 0; }

  bool is_subset_of(const ElemSet& o) const {
    return intersection_size(o) == size();
  }

  static ElemSet complement(const ElemSet& s, GroundSet g) {
    ElemSet out;
    out.e_.reserve(g.n - s.size());
    auto it = s.e_.begin();
    for (ElemId i = 0; i < g.n; ++i) {
      if (it != s.e_.end() && *it == i)
        ++it;
      else
        out.e_.push_back(i);
    }
    return out;
  }

  // Merge of two canonical sets into an existing buffer; reuses capacity.
  static void union_into(const ElemSet& a, const ElemSet& b, ElemSet& out) {
    out.e_.clear();
    out.e_.reserve(a.size() + b.size());
    std::set_union(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end(),
                   std::back_inserter(out.e_));
  }

  // pre: xs sorted strictly ascending; reuses the internal buffer.
  void assign_sorted(std::span<const ElemId> xs) {
    e_.assign(xs.begin(), xs.end());
  }

  /// Canonical 64-bit identity; order-independent, collision odds ~2^-64 per pair.
  std::uint64_t key() const {
    std::uint64_t sum = 0, xr = 0;
    for (ElemId e : e_) {
      std::uint64_t k = mix64(static_cast<std::uint64_t>(e) + kGolden);
      sum += k;
      xr ^= (k << 1) | (k >> 63);
    }
    return hash_combine(hash_combine(sum, xr), e_.size());
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(e_[i]);
    }
    out += "}";
    return out;
  }

  friend bool operator==(const ElemSet& a, const ElemSet& b) { return a.e_ == b.e_; }
  friend bool operator!=(const ElemSet& a, const ElemSet& b) { return a.e_ != b.e_; }
  friend bool operator<(const ElemSet& a, const ElemSet& b) {
    return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(),
                                        b.e_.end());
  }

 private:
  void canonicalize() {
    std::sort(e_.begin(), e_.end());
    e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
  }

  std::vector<ElemId> e_;
};

/// C(n, k), saturating at UINT64_MAX on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

/// Visits all size-k subsets of `pool` in lexicographic order.  The ElemSet
/// reference handed to fn aliases an internal buffer and is invalidated by the
/// next iteration.
template <class Fn>
void for_each_combination(const ElemSet& pool, std::size_t k, Fn&& fn) {
  const std::size_t m = pool.size();
  if (k > m) return;
  std::vector<ElemId> idx(k);
  std::vector<ElemId> buf(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<ElemId>(i);
  ElemSet scratch;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) buf[i] = pool[idx[i]];
    scratch.assign_sorted(buf);
    fn(static_cast<const ElemSet&>(scratch));
    // advance to next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Neumaier-compensated accumulator; keeps the 1e-12 mean identities honest
/// for neighborhoods with ~1e6 members.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace nsm
