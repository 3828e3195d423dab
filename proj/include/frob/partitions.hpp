#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frob/errors.hpp"
#include "frob/scalar.hpp"

// Set partitions, the signed/weighted sum chi(X) over them, and the partial
// pairing identity relating chi of glued sets to products of chi.

namespace frob::partitions {

/// Enumeration limits. Bell numbers and pairing counts grow fast.
struct Limits {
  std::size_t max_ground_size = 10;
  std::size_t max_pairing_side = 4;
};

/// Partition of {0, ..., k-1} into nonempty blocks, kept in canonical form:
/// indices ascend inside each block and blocks are sorted by least element.
class SetPartition {
 public:
  using Block = std::vector<std::size_t>;

  SetPartition(std::size_t ground_size, std::vector<Block> blocks)
      : ground_size_(ground_size), blocks_(std::move(blocks)) {
    if (ground_size_ == 0) throw InvalidArgumentError("partition ground size must be positive");
    std::vector<bool> seen(ground_size_, false);
    for (auto& block : blocks_) {
      if (block.empty()) throw InvalidArgumentError("partition block is empty");
      std::sort(block.begin(), block.end());
      for (std::size_t i : block) {
        if (i >= ground_size_) throw InvalidArgumentError("partition index out of range");
        if (seen[i]) throw InvalidArgumentError("partition blocks overlap");
        seen[i] = true;
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw InvalidArgumentError("partition blocks do not cover the ground set");
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
  }

  /// From a block label per element (labels need not be contiguous).
  static SetPartition from_labels(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, Block> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
    std::vector<Block> blocks;
    blocks.reserve(by_label.size());
    for (auto& [label, block] : by_label) blocks.push_back(std::move(block));
    return SetPartition(labels.size(), std::move(blocks));
  }

  static SetPartition singletons(std::size_t k) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < k; ++i) blocks.push_back({i});
    return SetPartition(k, std::move(blocks));
  }

  std::size_t ground_size() const noexcept { return ground_size_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }

  /// Blocks as bitmasks over the ground set (ground size <= 64).
  std::vector<std::uint64_t> block_masks() const {
    std::vector<std::uint64_t> masks;
    masks.reserve(blocks_.size());
    for (const auto& block : blocks_) {
      std::uint64_t mask = 0;
      for (std::size_t i : block) mask |= std::uint64_t{1} << i;
      masks.push_back(mask);
    }
    return masks;
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (b) out += ",";
      out += "{";
      for (std::size_t j = 0; j < blocks_[b].size(); ++j) {
        if (j) out += ",";
        out += std::to_string(blocks_[b][j]);
      }
      out += "}";
    }
    return out + "]";
  }

  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  std::size_t ground_size_;
  std::vector<Block> blocks_;
};

/// Integer-weighted formal sum of partitions of one ground set.
class FormalPartitionSum {
 public:
  using Terms = std::map<SetPartition, Integer>;

  explicit FormalPartitionSum(std::size_t ground_size) : ground_size_(ground_size) {}

  std::size_t ground_size() const noexcept { return ground_size_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  Integer coefficient(const SetPartition& pi) const {
    auto it = terms_.find(pi);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add(const SetPartition& pi, const Integer& c) {
    if (pi.ground_size() != ground_size_) {
      throw DimensionError("partition ground size does not match formal sum");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(pi, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FormalPartitionSum& operator+=(const FormalPartitionSum& other) {
    if (other.ground_size_ != ground_size_) throw DimensionError("formal sums over different sets");
    for (const auto& [pi, c] : other.terms_) add(pi, c);
    return *this;
  }

  friend FormalPartitionSum operator+(FormalPartitionSum a, const FormalPartitionSum& b) {
    return a += b;
  }

  friend FormalPartitionSum operator-(const FormalPartitionSum& a) {
    FormalPartitionSum out(a.ground_size_);
    for (const auto& [pi, c] : a.terms_) out.terms_.emplace(pi, -c);
    return out;
  }

  friend bool operator==(const FormalPartitionSum&, const FormalPartitionSum&) = default;

  std::string str() const {
    std::string out;
    for (const auto& [pi, c] : terms_) {
      if (!out.empty()) out += " ";
      out += (c > 0 ? "+" : "") + c.str() + "*" + pi.str();
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::size_t ground_size_;
  Terms terms_;
};

/// Injective partial map from {0..left_size-1} to {0..right_size-1}.
class PartialPairing {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  PartialPairing(std::size_t left_size, std::size_t right_size, std::vector<Pair> pairs = {})
      : left_size_(left_size), right_size_(right_size), pairs_(std::move(pairs)) {
    if (left_size_ == 0 || right_size_ == 0) {
      throw InvalidArgumentError("pairing sides must be nonempty");
    }
    std::sort(pairs_.begin(), pairs_.end());
    std::vector<bool> left_used(left_size_), right_used(right_size_);
    for (const auto& [x, y] : pairs_) {
      if (x >= left_size_ || y >= right_size_) throw InvalidArgumentError("pairing index out of range");
      if (left_used[x] || right_used[y]) throw InvalidArgumentError("pairing is not injective");
      left_used[x] = right_used[y] = true;
    }
  }

  std::size_t left_size() const noexcept { return left_size_; }
  std::size_t right_size() const noexcept { return right_size_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t quotient_size() const noexcept { return left_size_ + right_size_ - pairs_.size(); }

  /// Quotient map on the disjoint union X u Y, where X is indexed 0..left-1 and
  /// Y is indexed left..left+right-1. Classes are numbered by first appearance.
  std::vector<std::size_t> quotient_map() const {
    const std::size_t total = left_size_ + right_size_;
    std::vector<std::size_t> q(total, total);
    std::size_t next = 0;
    for (std::size_t x = 0; x < left_size_; ++x) q[x] = next++;
    for (const auto& [x, y] : pairs_) q[left_size_ + y] = q[x];
    for (std::size_t y = 0; y < right_size_; ++y) {
      if (q[left_size_ + y] == total) q[left_size_ + y] = next++;
    }
    return q;
  }

  friend auto operator<=>(const PartialPairing&, const PartialPairing&) = default;
  friend bool operator==(const PartialPairing&, const PartialPairing&) = default;

 private:
  std::size_t left_size_;
  std::size_t right_size_;
  std::vector<Pair> pairs_;
};

inline void check_ground_size(std::size_t k, const Limits& limits) {
  if (k == 0) throw InvalidArgumentError("ground size must be positive");
  if (k > limits.max_ground_size) {
    throw SizeLimitError("ground size " + std::to_string(k) + " exceeds limit " +
                         std::to_string(limits.max_ground_size));
  }
}

/// Every partition of {0..k-1} once, via restricted growth strings.
inline std::vector<SetPartition> enumerate_set_partitions(std::size_t k, const Limits& limits = {}) {
  check_ground_size(k, limits);
  std::vector<SetPartition> out;
  std::vector<std::size_t> rgs(k, 0);
  std::vector<std::size_t> max_prefix(k, 0);  // max label among rgs[0..i]
  while (true) {
    out.push_back(SetPartition::from_labels(rgs));
    // Find the rightmost position that can be incremented.
    std::size_t i = k - 1;
    while (i > 0 && rgs[i] == max_prefix[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    max_prefix[i] = std::max(max_prefix[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      rgs[j] = 0;
      max_prefix[j] = max_prefix[i];
    }
  }
  return out;
}

/// Sign shared by all permutations whose orbits are the blocks.
inline int partition_sign(const SetPartition& pi) {
  std::size_t transpositions = 0;
  for (const auto& block : pi.blocks()) transpositions += block.size() - 1;
  return transpositions % 2 == 0 ? 1 : -1;
}

/// Number of permutations whose orbits are the blocks: prod (|block| - 1)!.
inline Integer partition_weight(const SetPartition& pi) {
  Integer w = 1;
  for (const auto& block : pi.blocks()) w *= factorial(static_cast<unsigned>(block.size() - 1));
  return w;
}

inline FormalPartitionSum chi(std::size_t k, const Limits& limits = {}) {
  FormalPartitionSum out(k);
  for (const auto& pi : enumerate_set_partitions(k, limits)) {
    out.add(pi, partition_sign(pi) * partition_weight(pi));
  }
  return out;
}

/// Product of formal sums over X and Y as a formal sum over X u Y, with Y
/// shifted to indices after X.
inline FormalPartitionSum disjoint_product(const FormalPartitionSum& a, const FormalPartitionSum& b) {
  const std::size_t shift = a.ground_size();
  FormalPartitionSum out(shift + b.ground_size());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      std::vector<SetPartition::Block> blocks = pa.blocks();
      for (auto block : pb.blocks()) {
        for (auto& i : block) i += shift;
        blocks.push_back(std::move(block));
      }
      out.add(SetPartition(out.ground_size(), std::move(blocks)), ca * cb);
    }
  }
  return out;
}

/// Pullback of partitions along a surjection g : {0..n-1} -> {0..m-1}.
inline FormalPartitionSum pullback(const FormalPartitionSum& sum, const std::vector<std::size_t>& g) {
  std::vector<bool> hit(sum.ground_size(), false);
  for (std::size_t v : g) {
    if (v >= sum.ground_size()) throw InvalidArgumentError("pullback map leaves the target set");
    hit[v] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw InvalidArgumentError("pullback is only defined along surjective maps");
  }
  FormalPartitionSum out(g.size());
  for (const auto& [pi, c] : sum.terms()) {
    std::vector<std::size_t> block_of_target(sum.ground_size());
    for (std::size_t b = 0; b < pi.blocks().size(); ++b) {
      for (std::size_t v : pi.blocks()[b]) block_of_target[v] = b;
    }
    std::vector<std::size_t> labels(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) labels[i] = block_of_target[g[i]];
    out.add(SetPartition::from_labels(labels), c);
  }
  return out;
}

inline std::vector<PartialPairing> enumerate_partial_pairings(std::size_t left_size, std::size_t right_size,
                                                              const Limits& limits = {}) {
  if (left_size == 0 || right_size == 0) throw InvalidArgumentError("pairing sides must be nonempty");
  if (left_size > limits.max_pairing_side || right_size > limits.max_pairing_side) {
    throw SizeLimitError("pairing side exceeds limit " + std::to_string(limits.max_pairing_side));
  }
  std::vector<PartialPairing> out;
  std::vector<PartialPairing::Pair> current;
  std::vector<bool> right_used(right_size, false);
  // Each left element is either unpaired or paired with an unused right element.
  auto recurse = [&](auto& self, std::size_t x) -> void {
    if (x == left_size) {
      out.emplace_back(left_size, right_size, current);
      return;
    }
    self(self, x + 1);
    for (std::size_t y = 0; y < right_size; ++y) {
      if (right_used[y]) continue;
      right_used[y] = true;
      current.emplace_back(x, y);
      self(self, x + 1);
      current.pop_back();
      right_used[y] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

/// q_phi^* chi(X u_phi Y) on the disjoint union X u Y.
inline FormalPartitionSum pairing_pullback_chi(const PartialPairing& phi, const Limits& limits = {}) {
  return pullback(chi(phi.quotient_size(), limits), phi.quotient_map());
}

struct IdentityReport {
  std::size_t left_size;
  std::size_t right_size;
  bool equal;
  std::size_t pairings;
  FormalPartitionSum lhs;
  FormalPartitionSum rhs;
  /// First partition (in canonical order) where the two sides differ.
  std::optional<SetPartition> first_difference;
};

/// Compares the sum over partial pairings of pulled-back chi with chi(X)chi(Y).
inline IdentityReport verify_pairing_identity(std::size_t left_size, std::size_t right_size,
                                              const Limits& limits = {}) {
  const auto pairings = enumerate_partial_pairings(left_size, right_size, limits);
  FormalPartitionSum lhs(left_size + right_size);
  for (const auto& phi : pairings) lhs += pairing_pullback_chi(phi, limits);
  FormalPartitionSum rhs = disjoint_product(chi(left_size, limits), chi(right_size, limits));

  std::optional<SetPartition> diff;
  auto l = lhs.terms().begin();
  auto r = rhs.terms().begin();
  while (l != lhs.terms().end() || r != rhs.terms().end()) {
    if (r == rhs.terms().end() || (l != lhs.terms().end() && l->first < r->first)) {
      diff = l->first;
      break;
    }
    if (l == lhs.terms().end() || r->first < l->first) {
      diff = r->first;
      break;
    }
    if (l->second != r->second) {
      diff = l->first;
      break;
    }
    ++l;
    ++r;
  }
  return IdentityReport{left_size, right_size, !diff.has_value(), pairings.size(),
                        std::move(lhs), std::move(rhs), std::move(diff)};
}

/// c(m,n,l) = (-1)^(m+n-l-1) (m+n-l-1)! l! C(m,l) C(n,l): contribution of
/// pairings of size l inside one block with m left and n right elements.
inline Integer pairing_coefficient(unsigned m, unsigned n, unsigned l) {
  if (l > std::min(m, n)) return 0;
  Integer c = factorial(m + n - l - 1) * factorial(l) * binomial(m, l) * binomial(n, l);
  return (m + n - l - 1) % 2 == 0 ? c : Integer(-c);
}

/// d(m,n,l) = C(m,l) C(n,l) / C(m+n-1,l).
inline Rational normalized_pairing_coefficient(unsigned m, unsigned n, unsigned l) {
  if (l > std::min(m, n)) return 0;
  return Rational(binomial(m, l) * binomial(n, l), binomial(m + n - 1, l));
}

/// P_{m,n}(1) = sum_l d(m,n,l) (-1)^l. Vanishes whenever m, n >= 1.
inline Rational coefficient_polynomial_at_one(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw InvalidArgumentError("coefficient polynomial needs m, n >= 1");
  Rational total = 0;
  for (unsigned l = 0; l <= std::min(m, n); ++l) {
    const Rational d = normalized_pairing_coefficient(m, n, l);
    total += (l % 2 == 0) ? d : Rational(-d);
  }
  return total;
}

}  // namespace frob::partitions
