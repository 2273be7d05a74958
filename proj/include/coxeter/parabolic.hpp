#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "coxeter/classify.hpp"
#include "coxeter/system.hpp"

namespace coxeter {

namespace detail {

/// Calls `f(mask)` for every nonempty spherical subset, growing subsets by
/// increasing index. Spherical subsets are closed under taking subsets, so
/// the walk never leaves the family and its cost is proportional to its size.
template <class F>
void for_each_spherical_subset(const CoxeterSystem& sys,
                               const std::vector<Mask>& nb, F&& f) {
  const std::size_t n = sys.rank();
  auto grow = [&](auto&& self, Mask current, std::size_t next) -> void {
    for (std::size_t i = next; i < n; ++i) {
      const Mask m = current | bit(i);
      // Only the component gaining i can have changed type.
      if (!classify_connected(sys, component_of(nb, m, i)).is_spherical()) {
        continue;
      }
      f(m);
      self(self, m, i + 1);
    }
  };
  grow(grow, 0, 0);
}

/// Minimal non-spherical subsets in size-then-lexicographic order.
inline std::vector<Mask> minimal_infinite_masks(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  const auto nb = neighbour_masks(sys);
  std::unordered_set<Mask> spherical{0};
  std::vector<Mask> family{0};
  for_each_spherical_subset(sys, nb, [&](Mask m) {
    spherical.insert(m);
    family.push_back(m);
  });
  // A minimal infinite J is S + {v} with S = J - max(J) spherical.
  std::vector<Mask> out;
  for (Mask s : family) {
    const std::size_t start = s == 0 ? 0 : 64 - std::countl_zero(s);
    for (std::size_t v = start; v < n; ++v) {
      const Mask j = s | bit(v);
      if (spherical.count(j)) continue;
      bool minimal = true;
      for (Mask rest = s; rest && minimal; rest &= rest - 1) {
        minimal = spherical.count(j & ~bit(lowest(rest))) != 0;
      }
      if (minimal) out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end(),
            [](Mask a, Mask b) { return size_lex_less(a, b); });
  return out;
}

inline bool is_affine_witness(const CoxeterSystem& sys,
                              const std::vector<Mask>& nb, Mask m,
                              bool include_rank2_infinity) {
  if (!is_connected(nb, m)) return false;
  const std::size_t size = popcount(m);
  if (size < 2 || (size == 2 && !include_rank2_infinity)) return false;
  return classify_connected(sys, m).is_affine();
}

}  // namespace detail

/// Subsets J that generate an infinite group while every proper subset of J
/// generates a finite one, in size-then-lexicographic order.
inline std::vector<VertexSubset> minimal_infinite_subsets(const CoxeterSystem& sys) {
  require_valid(sys);
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("subset search supports rank <= 64");
  }
  std::vector<VertexSubset> out;
  for (Mask m : detail::minimal_infinite_masks(sys)) out.emplace_back(sys.rank(), m);
  return out;
}

/// First subset (by size, then lexicographically) whose sub-diagram is
/// irreducible affine of rank >= 3; with `include_rank2_infinity` the pair of
/// endpoints of an infinity edge also counts.
inline std::optional<VertexSubset> has_affine_parabolic(
    const CoxeterSystem& sys, bool include_rank2_infinity = false) {
  require_valid(sys);
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("subset search supports rank <= 64");
  }
  // Every proper sub-diagram of an irreducible affine diagram is spherical, so
  // affine subsets are among the minimal infinite ones.
  const auto nb = detail::neighbour_masks(sys);
  for (Mask m : detail::minimal_infinite_masks(sys)) {
    if (detail::is_affine_witness(sys, nb, m, include_rank2_infinity)) {
      return VertexSubset(sys.rank(), m);
    }
  }
  return std::nullopt;
}

/// Largest size of a spherical subset.
inline std::size_t max_spherical_rank(const CoxeterSystem& sys) {
  require_valid(sys);
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("subset search supports rank <= 64");
  }
  std::size_t best = 0;
  detail::for_each_spherical_subset(
      sys, detail::neighbour_masks(sys),
      [&](Mask m) { best = std::max(best, popcount(m)); });
  return best;
}

}  // namespace coxeter
