#pragma once

// Reference computations that share no code with the library: brute force
// over maps and permutations, determinants, direct polynomial expansion.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "frob/functional.hpp"
#include "frob/polynomial.hpp"
#include "frob/scalar.hpp"

namespace oracle {

using frob::GaussianRational;
using frob::Integer;
using frob::Rational;

/// Bell numbers from the Bell triangle.
inline std::vector<Integer> bell_numbers(std::size_t count) {
  std::vector<Integer> out{1};
  std::vector<Integer> row{1};
  while (out.size() < count) {
    std::vector<Integer> next{row.back()};
    for (const auto& x : row) next.push_back(next.back() + x);
    out.push_back(next.front());
    row = std::move(next);
  }
  return out;
}

/// Set partitions of {0..k-1} as sorted block lists, found by trying every map
/// {0..k-1} -> {0..k-1} and collecting the distinct fibre partitions.
inline std::set<std::vector<std::vector<std::size_t>>> brute_force_partitions(std::size_t k) {
  std::set<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> label(k, 0);
  for (;;) {
    std::vector<std::vector<std::size_t>> blocks(k);
    for (std::size_t i = 0; i < k; ++i) blocks[label[i]].push_back(i);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); }), blocks.end());
    std::sort(blocks.begin(), blocks.end());
    out.insert(blocks);
    std::size_t pos = 0;
    while (pos < k && ++label[pos] == k) label[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

/// Sign of a permutation as the determinant of its permutation matrix,
/// computed by fraction-free elimination.
inline int permutation_matrix_determinant(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][perm[i]] = 1;
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (m[pivot][col] == 0) ++pivot;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      sign = -sign;
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= m[col][c] * m[r][col];
    }
  }
  long long det = sign;
  for (std::size_t i = 0; i < n; ++i) det *= m[i][i];
  return static_cast<int>(det);
}

/// Orbit partition of a permutation as sorted block lists.
inline std::vector<std::vector<std::size_t>> orbits(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      block.push_back(j);
    }
    std::sort(block.begin(), block.end());
    out.push_back(block);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Coefficients of prod_j (1 + v_j t): entry k is e_k(v).
template <class S>
std::vector<S> elementary_symmetric(const std::vector<S>& v) {
  std::vector<S> poly{S(1)};
  for (const auto& x : v) {
    poly.push_back(S(0));
    for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] += poly[k - 1] * x;
  }
  return poly;
}

/// Phi_k of f = sum_j ev_{x_j} (points listed with repetition) as the sum over
/// injective maps s: {1..k} -> {1..n} of prod_i a_i(x_{s(i)}).
inline GaussianRational injective_sum(const std::vector<std::vector<GaussianRational>>& values_at_points) {
  // values_at_points[i][j] = a_i(x_j)
  const std::size_t k = values_at_points.size();
  if (k == 0) return GaussianRational(1);
  const std::size_t n = values_at_points[0].size();
  GaussianRational total(0);
  std::vector<std::size_t> chosen;
  std::vector<bool> used(n, false);
  auto rec = [&](auto& self, std::size_t i, const GaussianRational& acc) -> void {
    if (i == k) {
      total += acc;
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, acc * values_at_points[i][j]);
      used[j] = false;
    }
  };
  rec(rec, 0, GaussianRational(1));
  return total;
}

/// The points of a multiset listed with repetition.
inline std::vector<std::vector<GaussianRational>> expand(const frob::PointMultiset<GaussianRational>& points) {
  std::vector<std::vector<GaussianRational>> out;
  for (const auto& e : points.entries()) {
    for (std::uint32_t r = 0; r < e.multiplicity; ++r) out.push_back(e.point);
  }
  return out;
}

inline Integer binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  Integer out = 1;
  for (long long i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace oracle
