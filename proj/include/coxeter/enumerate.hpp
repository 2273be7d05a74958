#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "coxeter/canonical.hpp"
#include "coxeter/classify.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/system.hpp"

namespace coxeter {

/// Which diagrams an enumeration produces.
///
/// `labels` is the allowed label set (must contain 2). `simply_laced` and
/// `crystallographic` intersect it with {2,3} and {2,3,4,6,inf}.
struct EnumFilter {
  std::vector<Label> labels{Label(2), Label(3)};
  bool connected_only = false;
  bool simply_laced = false;
  bool crystallographic = false;
  /// Every subset of at most k vertices is spherical (unset: no condition).
  std::optional<std::size_t> k_spherical;
  /// Every proper sub-diagram has only spherical or affine components.
  bool all_proper_parabolics_spherical_or_affine = false;

  void validate() const {
    if (labels.empty()) throw InputError("label set must not be empty");
    if (std::find(labels.begin(), labels.end(), Label(2)) == labels.end()) {
      throw InputError("label set must contain 2");
    }
    for (Label m : labels) {
      if (m.is_finite() && m.value() < 2) throw InputError("labels must be >= 2 or inf");
      if (m.is_finite() && m.value() > 254) throw UnsupportedError("labels must be <= 254");
    }
    if (k_spherical && *k_spherical == 0) throw InputError("k-sphericity needs k >= 1");
  }

  /// Labels actually used: the label set narrowed by the class flags,
  /// sorted and without duplicates.
  std::vector<Label> effective_labels() const {
    std::vector<Label> out;
    for (Label m : labels) {
      if (simply_laced && m != Label(2) && m != Label(3)) continue;
      if (crystallographic && !is_crystallographic_label(m)) continue;
      out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

inline constexpr std::size_t kMaxEnumerationRank = 11;

/// Sub-diagram classes that are closed under taking sub-diagrams.
enum class Hereditary { any, spherical, spherical_or_affine };

/// How one level of the vertex-by-vertex extension filters children.
struct ExtensionRule {
  /// Must hold on every sub-diagram of the child that contains the new vertex
  /// and misses some old vertex. Parents are assumed to satisfy it already.
  Hereditary proper = Hereditary::any;
  /// Every subset of at most this many vertices is spherical (0: off).
  std::size_t k_spherical = 0;
  /// The new vertex must join every component of the parent.
  bool connected = false;
  /// Every vertex-deleted sub-diagram satisfies `proper` as well.
  bool all_deleted = false;
  /// Extra condition on the complete child.
  std::function<bool(const CoxeterSystem&)> accept;
};

namespace detail {

inline bool satisfies(Hereditary h, const TypeClass& t) {
  switch (h) {
    case Hereditary::any: return true;
    case Hereditary::spherical: return t.is_spherical();
    case Hereditary::spherical_or_affine: return !t.is_indefinite();
  }
  return true;
}

inline bool satisfies_mask(Hereditary h, const CoxeterSystem& sys,
                           const std::vector<Mask>& nb, Mask m) {
  if (h == Hereditary::any) return true;
  for (Mask c : component_masks(nb, m))
    if (!satisfies(h, classify_connected(sys, c))) return false;
  return true;
}

/// Label vectors for a new vertex, tried in order with prefix pruning.
class Extender {
 public:
  Extender(const std::vector<Label>& labels, const ExtensionRule& rule)
      : labels_(labels), rule_(rule) {}

  /// Adds the canonical codes of all admissible children of `parent`.
  void extend(const CoxeterSystem& parent, std::unordered_set<CanonicalCode>& out) {
    const std::size_t n = parent.rank();
    child_ = CoxeterSystem(n + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) child_.set_label(i, j, parent.label(i, j));
    nb_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && parent.label(i, j).is_edge()) nb_[i] |= bit(j);
    parent_components_ = component_masks(nb_, full_mask(n));
    assign(0, out);
  }

 private:
  void assign(std::size_t k, std::unordered_set<CanonicalCode>& out) {
    const std::size_t n = child_.rank() - 1;
    if (k == n) {
      finish(out);
      return;
    }
    for (Label m : labels_) {
      child_.set_label(k, n, m);
      if (m.is_edge()) {
        nb_[k] |= bit(n);
        nb_[n] |= bit(k);
      } else {
        nb_[k] &= ~bit(n);
        nb_[n] &= ~bit(k);
      }
      if (prefix_ok(k)) assign(k + 1, out);
    }
    nb_[k] &= ~bit(n);
    nb_[n] &= ~bit(k);
    child_.set_label(k, n, Label(2));
  }

  /// Checks the sub-diagram on {0..k, new}; sub-diagrams not containing
  /// vertex k were checked at earlier positions.
  bool prefix_ok(std::size_t k) const {
    const std::size_t n = child_.rank() - 1;
    const Mask m = full_mask(k + 1) | bit(n);
    if (k + 1 < n && rule_.proper != Hereditary::any) {
      const Mask c = component_of(nb_, m, n);
      if (!satisfies(rule_.proper, classify_connected(child_, c))) return false;
    }
    if (rule_.k_spherical >= 2) {
      // Subsets holding both k and the new vertex, of size <= k_spherical.
      bool ok = true;
      auto grow = [&](auto&& self, Mask cur, std::size_t next) -> void {
        if (!ok) return;
        const Mask c = component_of(nb_, cur, n);
        if (!classify_connected(child_, c).is_spherical()) {
          ok = false;
          return;
        }
        if (popcount(cur) == rule_.k_spherical) return;
        for (std::size_t x = next; x < k && ok; ++x) self(self, cur | bit(x), x + 1);
      };
      grow(grow, bit(k) | bit(n), 0);
      if (!ok) return false;
    }
    return true;
  }

  void finish(std::unordered_set<CanonicalCode>& out) {
    const std::size_t n = child_.rank() - 1;
    if (rule_.connected) {
      for (Mask c : parent_components_)
        if ((nb_[n] & c) == 0) return;
    }
    if (rule_.all_deleted && rule_.proper != Hereditary::any) {
      const Mask all = full_mask(n + 1);
      for (std::size_t v = 0; v < n; ++v)
        if (!satisfies_mask(rule_.proper, child_, nb_, all & ~bit(v))) return;
    }
    if (rule_.accept && !rule_.accept(child_)) return;
    out.insert(canonical_code(child_));
  }

  const std::vector<Label>& labels_;
  const ExtensionRule& rule_;
  CoxeterSystem child_;
  std::vector<Mask> nb_;
  std::vector<Mask> parent_components_;
};

}  // namespace detail

/// All children of `parents` (codes of rank r) under `rule`, as sorted
/// canonical codes of rank r + 1. Parents are split across `jobs` threads;
/// the result does not depend on the split.
inline std::vector<CanonicalCode> extend_codes(const std::vector<CanonicalCode>& parents,
                                               const std::vector<Label>& labels,
                                               const ExtensionRule& rule,
                                               std::size_t jobs = 1) {
  jobs = std::max<std::size_t>(1, std::min(jobs, parents.size()));
  std::vector<std::unordered_set<CanonicalCode>> found(jobs);
  auto work = [&](std::size_t t) {
    detail::Extender ext(labels, rule);
    for (std::size_t i = t; i < parents.size(); i += jobs) ext.extend(decode(parents[i]), found[t]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(work, t);
    for (auto& th : threads) th.join();
  }
  std::vector<CanonicalCode> out;
  for (auto& set : found) {
    out.insert(out.end(), std::make_move_iterator(set.begin()),
               std::make_move_iterator(set.end()));
    set.clear();
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Codes of the diagrams of rank 1 (a single vertex).
inline std::vector<CanonicalCode> rank_one_codes() {
  return {canonical_code(CoxeterSystem(1))};
}

namespace detail {

inline void check_rank(std::size_t rank) {
  if (rank > kMaxEnumerationRank) {
    throw UnsupportedError("enumeration supports rank <= 11");
  }
}

inline std::size_t k_of(const EnumFilter& f) {
  return f.k_spherical ? *f.k_spherical : 0;
}

}  // namespace detail

/// Canonical codes, in code order, of one representative per isomorphism
/// class of rank-`rank` diagrams passing `filter`.
///
/// Diagrams are grown one vertex at a time. Every level keeps only diagrams
/// whose hereditary conditions hold; a connected diagram always has a vertex
/// whose removal leaves it connected, so connected diagrams grow from
/// connected parents.
inline std::vector<CanonicalCode> enumerate_codes(std::size_t rank, const EnumFilter& filter,
                                                  std::size_t jobs = 1) {
  filter.validate();
  detail::check_rank(rank);
  if (rank == 0) {
    if (filter.connected_only) return {};
    return {canonical_code(CoxeterSystem(0))};
  }
  const auto labels = filter.effective_labels();
  const bool sa = filter.all_proper_parabolics_spherical_or_affine;
  std::vector<CanonicalCode> level = rank_one_codes();
  for (std::size_t r = 2; r <= rank; ++r) {
    ExtensionRule rule;
    rule.connected = filter.connected_only;
    rule.k_spherical = detail::k_of(filter);
    if (sa) {
      rule.proper = Hereditary::spherical_or_affine;
      if (r == rank) {
        rule.all_deleted = true;
      } else {
        // Intermediate diagrams are proper sub-diagrams of the final ones.
        rule.accept = [](const CoxeterSystem& c) {
          const auto nb = detail::neighbour_masks(c);
          return detail::satisfies_mask(Hereditary::spherical_or_affine, c, nb,
                                        full_mask(c.rank()));
        };
      }
    }
    level = extend_codes(level, labels, rule, jobs);
  }
  return level;
}

/// Decoded form of `enumerate_codes`.
inline std::vector<CoxeterSystem> enumerate_diagrams(std::size_t rank, const EnumFilter& filter,
                                                     std::size_t jobs = 1) {
  std::vector<CoxeterSystem> out;
  for (const auto& c : enumerate_codes(rank, filter, jobs)) out.push_back(decode(c));
  return out;
}

/// Per-rank codes of connected minimal infinite diagrams (non-spherical,
/// every proper sub-diagram spherical) within the label set, ranks 1..max_rank.
inline std::vector<std::vector<CanonicalCode>> minimal_infinite_codes(
    std::size_t max_rank, const EnumFilter& filter, std::size_t jobs = 1) {
  filter.validate();
  detail::check_rank(max_rank);
  const auto labels = filter.effective_labels();
  std::vector<std::vector<CanonicalCode>> out(max_rank + 1);
  std::vector<CanonicalCode> spherical = rank_one_codes();
  for (std::size_t r = 2; r <= max_rank; ++r) {
    ExtensionRule child;
    child.proper = Hereditary::spherical;
    child.connected = true;
    child.all_deleted = true;
    child.k_spherical = detail::k_of(filter);
    child.accept = [](const CoxeterSystem& c) {
      return !detail::classify_connected(c, full_mask(c.rank())).is_spherical();
    };
    out[r] = extend_codes(spherical, labels, child, jobs);
    if (r == max_rank) break;
    ExtensionRule grow;
    grow.proper = Hereditary::spherical;
    grow.connected = true;
    grow.k_spherical = detail::k_of(filter);
    grow.accept = [](const CoxeterSystem& c) {
      return detail::classify_connected(c, full_mask(c.rank())).is_spherical();
    };
    spherical = extend_codes(spherical, labels, grow, jobs);
  }
  return out;
}

/// Per-rank codes of connected diagrams that are neither spherical nor affine
/// while every proper sub-diagram has only spherical or affine components.
inline std::vector<std::vector<CanonicalCode>> quasi_minimal_codes(std::size_t max_rank,
                                                                   const EnumFilter& filter,
                                                                   std::size_t jobs = 1) {
  filter.validate();
  detail::check_rank(max_rank);
  if (!filter.all_proper_parabolics_spherical_or_affine) {
    throw InputError("quasi-minimal enumeration needs the spherical-or-affine filter");
  }
  const auto labels = filter.effective_labels();
  std::vector<std::vector<CanonicalCode>> out(max_rank + 1);
  std::vector<CanonicalCode> closed = rank_one_codes();
  for (std::size_t r = 2; r <= max_rank; ++r) {
    ExtensionRule child;
    child.proper = Hereditary::spherical_or_affine;
    child.connected = true;
    child.all_deleted = true;
    child.k_spherical = detail::k_of(filter);
    child.accept = [](const CoxeterSystem& c) {
      return detail::classify_connected(c, full_mask(c.rank())).is_indefinite();
    };
    out[r] = extend_codes(closed, labels, child, jobs);
    if (r == max_rank) break;
    ExtensionRule grow;
    grow.proper = Hereditary::spherical_or_affine;
    grow.connected = true;
    grow.k_spherical = detail::k_of(filter);
    grow.accept = [](const CoxeterSystem& c) {
      return !detail::classify_connected(c, full_mask(c.rank())).is_indefinite();
    };
    closed = extend_codes(closed, labels, grow, jobs);
  }
  return out;
}

}  // namespace coxeter
