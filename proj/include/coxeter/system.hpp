#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "coxeter/errors.hpp"
#include "coxeter/label.hpp"

namespace coxeter {

/// Bit i set means generator i is in the subset.
using Mask = std::uint64_t;

/// Subset operations use 64-bit masks, so this is the largest rank any
/// subset-based operation accepts.
inline constexpr std::size_t kMaxSubsetRank = 64;

constexpr Mask bit(std::size_t i) noexcept { return Mask{1} << i; }
constexpr Mask full_mask(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : bit(n) - 1;
}
constexpr std::size_t popcount(Mask m) noexcept {
  return static_cast<std::size_t>(std::popcount(m));
}
constexpr std::size_t lowest(Mask m) noexcept {
  return static_cast<std::size_t>(std::countr_zero(m));
}

/// A Coxeter system given by its symmetric label matrix m(s,t).
///
/// Vertices are 0-based generator indices. Construction does not enforce the
/// Coxeter matrix axioms; `validate` reports every violation so that
/// malformed input can be diagnosed rather than rejected wholesale.
class CoxeterSystem {
 public:
  CoxeterSystem() = default;

  /// n commuting involutions: 1 on the diagonal, 2 elsewhere.
  explicit CoxeterSystem(std::size_t rank)
      : rank_(rank), labels_(rank * rank, Label(2)) {
    for (std::size_t i = 0; i < rank; ++i) labels_[i * rank + i] = Label(1);
  }

  /// Takes the matrix verbatim (it may violate the axioms; see `validate`).
  static CoxeterSystem from_matrix(
      const std::vector<std::vector<Label>>& rows) {
    CoxeterSystem sys;
    sys.rank_ = rows.size();
    sys.labels_.reserve(sys.rank_ * sys.rank_);
    for (const auto& row : rows) {
      if (row.size() != sys.rank_) {
        throw InputError("label matrix must be square");
      }
      sys.labels_.insert(sys.labels_.end(), row.begin(), row.end());
    }
    return sys;
  }

  std::size_t rank() const noexcept { return rank_; }

  Label label(std::size_t s, std::size_t t) const noexcept {
    return labels_[s * rank_ + t];
  }

  /// Sets m(s,t) and m(t,s).
  void set_label(std::size_t s, std::size_t t, Label m) {
    check_index(s);
    check_index(t);
    labels_[s * rank_ + t] = m;
    labels_[t * rank_ + s] = m;
  }

  /// Sets only m(s,t); used to build deliberately asymmetric test input.
  void set_entry(std::size_t s, std::size_t t, Label m) {
    check_index(s);
    check_index(t);
    labels_[s * rank_ + t] = m;
  }

  bool operator==(const CoxeterSystem&) const = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= rank_) {
      throw InputError("vertex index " + std::to_string(i) +
                       " out of range for rank " + std::to_string(rank_));
    }
  }

  std::size_t rank_ = 0;
  std::vector<Label> labels_;
};

/// A subset J of the generators {0..n-1} of a rank-n system.
class VertexSubset {
 public:
  VertexSubset() = default;

  VertexSubset(std::size_t rank, Mask bits) : rank_(rank), bits_(bits) {
    if (rank > kMaxSubsetRank) {
      throw UnsupportedError("vertex subsets support rank <= 64");
    }
    if ((bits & ~full_mask(rank)) != 0) {
      throw InputError("vertex subset has an index >= rank " +
                       std::to_string(rank));
    }
  }

  static VertexSubset from_indices(std::size_t rank,
                                   std::span<const std::size_t> indices) {
    if (rank > kMaxSubsetRank) {
      throw UnsupportedError("vertex subsets support rank <= 64");
    }
    Mask m = 0;
    for (std::size_t i : indices) {
      if (i >= rank) {
        throw InputError("vertex index " + std::to_string(i) +
                         " out of range for rank " + std::to_string(rank));
      }
      if (m & bit(i)) {
        throw InputError("duplicate vertex index " + std::to_string(i));
      }
      m |= bit(i);
    }
    return VertexSubset(rank, m);
  }

  static VertexSubset from_indices(std::size_t rank,
                                   std::initializer_list<std::size_t> indices) {
    return from_indices(rank, std::span<const std::size_t>(indices.begin(),
                                                           indices.size()));
  }

  static VertexSubset full(std::size_t rank) {
    return VertexSubset(rank, full_mask(rank));
  }

  std::size_t rank() const noexcept { return rank_; }
  Mask bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return popcount(bits_); }
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(std::size_t i) const noexcept {
    return i < rank_ && (bits_ & bit(i)) != 0;
  }

  /// Members in ascending order.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (Mask m = bits_; m; m &= m - 1) out.push_back(lowest(m));
    return out;
  }

  bool operator==(const VertexSubset&) const = default;

 private:
  std::size_t rank_ = 0;
  Mask bits_ = 0;
};

/// The deterministic order used for every witness search: smaller subsets
/// first, ties broken by comparing the ascending index lists.
inline bool size_lex_less(Mask a, Mask b) noexcept {
  const std::size_t pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  // Same size: the first differing index decides; the subset holding the
  // smaller index comes first.
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

inline bool size_lex_less(const VertexSubset& a, const VertexSubset& b) noexcept {
  return size_lex_less(a.bits(), b.bits());
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { diagonal, symmetry, off_diagonal_range };

struct Violation {
  std::size_t row;
  std::size_t column;
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

inline ValidationResult validate(const CoxeterSystem& sys) {
  ValidationResult out;
  const std::size_t n = sys.rank();
  for (std::size_t s = 0; s < n; ++s) {
    if (sys.label(s, s) != Label(1)) {
      out.violations.push_back({s, s, ViolationKind::diagonal,
                                "diagonal must be 1"});
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      const Label m = sys.label(s, t);
      if (s < t && m != sys.label(t, s)) {
        out.violations.push_back(
            {s, t, ViolationKind::symmetry,
             "symmetry: m(" + std::to_string(s) + "," + std::to_string(t) +
                 ")=" + m.to_string() + " but m(" + std::to_string(t) + "," +
                 std::to_string(s) + ")=" + sys.label(t, s).to_string()});
      }
      if (m.is_finite() && m.value() < 2) {
        out.violations.push_back({s, t, ViolationKind::off_diagonal_range,
                                  "off-diagonal label must be >= 2 or inf"});
      }
    }
  }
  return out;
}

inline void require_valid(const CoxeterSystem& sys) {
  const auto result = validate(sys);
  if (!result.ok()) {
    const auto& v = result.violations.front();
    throw InputError("invalid Coxeter matrix at (" + std::to_string(v.row) +
                     "," + std::to_string(v.column) + "): " + v.message);
  }
}

// ---------------------------------------------------------------------------
// Sub-diagrams and components

/// Sub-diagram on the vertices of `subset`, renumbered in ascending order.
inline CoxeterSystem restrict_to(const CoxeterSystem& sys, Mask subset) {
  std::vector<std::size_t> idx;
  for (Mask m = subset; m; m &= m - 1) idx.push_back(lowest(m));
  CoxeterSystem out(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      out.set_label(a, b, sys.label(idx[a], idx[b]));
    }
  }
  return out;
}

inline CoxeterSystem restrict(const CoxeterSystem& sys, const VertexSubset& j) {
  if (j.rank() != sys.rank()) {
    throw InputError("subset indexes rank " + std::to_string(j.rank()) +
                     " but the system has rank " + std::to_string(sys.rank()));
  }
  return restrict_to(sys, j.bits());
}

namespace detail {

/// Diagram neighbours of every vertex (labels >= 3 or infinity).
inline std::vector<Mask> neighbour_masks(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  std::vector<Mask> nb(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (sys.label(s, t).is_edge()) {
        nb[s] |= bit(t);
        nb[t] |= bit(s);
      }
    }
  }
  return nb;
}

inline Mask component_of(const std::vector<Mask>& nb, Mask within,
                         std::size_t start) {
  Mask seen = bit(start);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= nb[lowest(f)];
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

/// Components of the sub-diagram on `within`, ordered by smallest member.
inline std::vector<Mask> component_masks(const std::vector<Mask>& nb,
                                         Mask within) {
  std::vector<Mask> out;
  Mask rest = within;
  while (rest) {
    const Mask c = component_of(nb, within, lowest(rest));
    out.push_back(c);
    rest &= ~c;
  }
  return out;
}

inline bool is_connected(const std::vector<Mask>& nb, Mask within) {
  return within != 0 && component_of(nb, within, lowest(within)) == within;
}

/// Every label between `a` and `b` is 2.
inline bool commute(const CoxeterSystem& sys, Mask a, Mask b) {
  for (Mask x = a; x; x &= x - 1) {
    for (Mask y = b; y; y &= y - 1) {
      if (sys.label(lowest(x), lowest(y)) != Label(2)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Connected components of the diagram (edges where m(s,t) >= 3), sorted by
/// smallest member.
inline std::vector<VertexSubset> components(const CoxeterSystem& sys) {
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("components supports rank <= 64");
  }
  std::vector<VertexSubset> out;
  const auto nb = detail::neighbour_masks(sys);
  for (Mask c : detail::component_masks(nb, full_mask(sys.rank()))) {
    out.emplace_back(sys.rank(), c);
  }
  return out;
}

inline bool is_irreducible(const CoxeterSystem& sys) {
  return sys.rank() > 0 &&
         detail::is_connected(detail::neighbour_masks(sys),
                              full_mask(sys.rank()));
}

inline bool is_simply_laced(const CoxeterSystem& sys) {
  for (std::size_t s = 0; s < sys.rank(); ++s) {
    for (std::size_t t = s + 1; t < sys.rank(); ++t) {
      const Label m = sys.label(s, t);
      if (m != Label(2) && m != Label(3)) return false;
    }
  }
  return true;
}

inline bool is_crystallographic_label(Label m) noexcept {
  return m.is_infinite() || m == Label(2) || m == Label(3) || m == Label(4) ||
         m == Label(6);
}

inline bool is_crystallographic(const CoxeterSystem& sys) {
  for (std::size_t s = 0; s < sys.rank(); ++s) {
    for (std::size_t t = s + 1; t < sys.rank(); ++t) {
      if (!is_crystallographic_label(sys.label(s, t))) return false;
    }
  }
  return true;
}

/// Block-diagonal sum: the vertices of `b` follow those of `a`, all cross
/// labels 2.
inline CoxeterSystem direct_sum(const CoxeterSystem& a, const CoxeterSystem& b) {
  CoxeterSystem out(a.rank() + b.rank());
  for (std::size_t s = 0; s < a.rank(); ++s)
    for (std::size_t t = s + 1; t < a.rank(); ++t)
      out.set_label(s, t, a.label(s, t));
  for (std::size_t s = 0; s < b.rank(); ++s)
    for (std::size_t t = s + 1; t < b.rank(); ++t)
      out.set_label(a.rank() + s, a.rank() + t, b.label(s, t));
  return out;
}

/// Relabels vertices: vertex `perm[i]` of the result is vertex i of `sys`.
inline CoxeterSystem permute(const CoxeterSystem& sys,
                             std::span<const std::size_t> perm) {
  if (perm.size() != sys.rank()) throw InputError("permutation size mismatch");
  std::vector<bool> hit(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || hit[p]) throw InputError("not a permutation");
    hit[p] = true;
  }
  CoxeterSystem out(sys.rank());
  for (std::size_t s = 0; s < sys.rank(); ++s)
    for (std::size_t t = s + 1; t < sys.rank(); ++t)
      out.set_label(perm[s], perm[t], sys.label(s, t));
  return out;
}

}  // namespace coxeter
