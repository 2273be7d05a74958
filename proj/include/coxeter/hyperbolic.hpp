#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxeter/classify.hpp"
#include "coxeter/parabolic.hpp"
#include "coxeter/system.hpp"

namespace coxeter {

enum class WitnessKind { affine_subset, commuting_infinite_pair };

/// Certificate for a subgroup isomorphic to Z x Z.
///
/// affine_subset: `first` spans an irreducible affine sub-diagram of rank >= 3
/// (its type is in `type`). commuting_infinite_pair: `first` and `second` are
/// disjoint, every label between them is 2, and both are non-spherical.
struct ZxZWitness {
  WitnessKind kind = WitnessKind::affine_subset;
  VertexSubset first;
  VertexSubset second;
  TypeClass type;

  bool operator==(const ZxZWitness&) const = default;
};

struct HyperbolicityVerdict {
  bool hyperbolic = true;
  std::optional<ZxZWitness> witness;
};

/// Re-checks a witness against the classifier.
inline bool validate_witness(const CoxeterSystem& sys, const ZxZWitness& w) {
  if (w.first.rank() != sys.rank()) return false;
  const auto nb = detail::neighbour_masks(sys);
  if (w.kind == WitnessKind::affine_subset) {
    const Mask m = w.first.bits();
    return popcount(m) >= 3 && detail::is_connected(nb, m) &&
           detail::classify_connected(sys, m) == w.type && w.type.is_affine();
  }
  const Mask a = w.first.bits(), b = w.second.bits();
  return w.second.rank() == sys.rank() && a != 0 && b != 0 && (a & b) == 0 &&
         detail::commute(sys, a, b) && !detail::is_spherical_mask(sys, nb, a) &&
         !detail::is_spherical_mask(sys, nb, b);
}

/// Moussong's criterion: the group is Gromov hyperbolic iff it has no affine
/// special subgroup of rank >= 3 and no pair of commuting infinite special
/// subgroups.
///
/// Pairs are searched first, over minimal infinite subsets (any infinite
/// subset contains one); then affine subsets. Within each search the witness
/// is the first in size-then-lexicographic order.
inline HyperbolicityVerdict is_hyperbolic(const CoxeterSystem& sys) {
  require_valid(sys);
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("hyperbolicity supports rank <= 64");
  }
  const std::size_t n = sys.rank();
  const auto nb = detail::neighbour_masks(sys);
  const auto minimal = detail::minimal_infinite_masks(sys);
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    for (std::size_t j = i + 1; j < minimal.size(); ++j) {
      const Mask a = minimal[i], b = minimal[j];
      if ((a & b) == 0 && detail::commute(sys, a, b)) {
        return {false, ZxZWitness{WitnessKind::commuting_infinite_pair,
                                  VertexSubset(n, a), VertexSubset(n, b), {}}};
      }
    }
  }
  for (Mask m : minimal) {
    if (detail::is_affine_witness(sys, nb, m, false)) {
      return {false, ZxZWitness{WitnessKind::affine_subset, VertexSubset(n, m),
                                VertexSubset(n, 0),
                                detail::classify_connected(sys, m)}};
    }
  }
  return {true, std::nullopt};
}

struct LemmaDynkinResult {
  bool hypotheses_ok = false;
  bool hyperbolic = false;
  std::optional<VertexSubset> affine_parabolic;
  bool lemma_consistent = true;
};

/// For crystallographic systems that are simply laced or 3-spherical,
/// hyperbolicity is equivalent to having no affine special subgroup; this
/// evaluates both sides.
inline LemmaDynkinResult lemma_dynkin_check(const CoxeterSystem& sys) {
  require_valid(sys);
  LemmaDynkinResult r;
  r.hypotheses_ok = is_crystallographic(sys) &&
                    (is_simply_laced(sys) || is_k_spherical(sys, 3));
  r.hyperbolic = is_hyperbolic(sys).hyperbolic;
  r.affine_parabolic = has_affine_parabolic(sys);
  r.lemma_consistent =
      !r.hypotheses_ok || (r.hyperbolic == !r.affine_parabolic.has_value());
  return r;
}

/// Which branch of the path argument produced the affine subset.
enum class PathCase {
  first_is_affine,
  second_is_affine,
  four_label_attachment,   // path meets a 4 at I or J
  multiple_attachments,    // path end sees two vertices of I or of J
  single_attachments,
};

inline const char* path_case_name(PathCase c) {
  switch (c) {
    case PathCase::first_is_affine: return "first_is_affine";
    case PathCase::second_is_affine: return "second_is_affine";
    case PathCase::four_label_attachment: return "four_label_attachment";
    case PathCase::multiple_attachments: return "multiple_attachments";
    case PathCase::single_attachments: break;
  }
  return "single_attachments";
}

struct AffineFromCommuting {
  VertexSubset subset;
  TypeClass type;
  PathCase path_case = PathCase::first_is_affine;
  /// Vertices of the shortest path strictly between I and J.
  VertexSubset path_interior;
  /// The case analysis found nothing and a search over the whole diagram
  /// supplied the subset.
  bool fallback_used = false;
};

namespace detail {

inline bool is_minimal_infinite_mask(const CoxeterSystem& sys,
                                     const std::vector<Mask>& nb, Mask m) {
  if (m == 0 || is_spherical_mask(sys, nb, m)) return false;
  for (Mask rest = m; rest; rest &= rest - 1) {
    if (!is_spherical_mask(sys, nb, m & ~bit(lowest(rest)))) return false;
  }
  return true;
}

/// Shortest path (vertex list) from any vertex of `from` to any vertex of
/// `to`; ties go to the lowest-indexed predecessor.
inline std::vector<std::size_t> shortest_path(const std::vector<Mask>& nb,
                                              Mask from, Mask to) {
  const std::size_t n = nb.size();
  std::vector<std::size_t> parent(n, n);
  std::deque<std::size_t> queue;
  Mask seen = from;
  for (Mask f = from; f; f &= f - 1) queue.push_back(lowest(f));
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (to & bit(u)) {
      std::vector<std::size_t> path{u};
      while (parent[path.back()] != n) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Mask next = nb[u] & ~seen; next; next &= next - 1) {
      const std::size_t v = lowest(next);
      seen |= bit(v);
      parent[v] = u;
      queue.push_back(v);
    }
  }
  return {};
}

}  // namespace detail

/// Follows the path argument: given commuting minimal infinite subsets I and
/// J of a connected crystallographic diagram that is simply laced or
/// 3-spherical, produces an irreducible affine subset.
///
/// If I or J is itself affine it is returned. Otherwise a shortest path from
/// I to J is taken and the sub-diagram on the path together with I and J is
/// searched for an affine subset of the family the attachment pattern
/// predicts. If that fails the whole diagram is searched and `fallback_used`
/// is set.
inline AffineFromCommuting affine_from_commuting(const CoxeterSystem& sys,
                                                 const VertexSubset& i_set,
                                                 const VertexSubset& j_set) {
  require_valid(sys);
  const std::size_t n = sys.rank();
  if (n > kMaxSubsetRank) throw UnsupportedError("rank must be <= 64");
  if (i_set.rank() != n || j_set.rank() != n) {
    throw InputError("subsets must index the given system");
  }
  if (!is_crystallographic(sys)) throw InputError("system must be crystallographic");
  if (!is_simply_laced(sys) && !is_k_spherical(sys, 3)) {
    throw InputError("system must be simply laced or 3-spherical");
  }
  if (!is_irreducible(sys)) throw InputError("system must be connected");
  const auto nb = detail::neighbour_masks(sys);
  const Mask a = i_set.bits(), b = j_set.bits();
  if ((a & b) != 0) throw InputError("I and J must be disjoint");
  if (!detail::commute(sys, a, b)) throw InputError("I and J must commute");
  if (!detail::is_minimal_infinite_mask(sys, nb, a) ||
      !detail::is_minimal_infinite_mask(sys, nb, b)) {
    throw InputError("I and J must be minimal infinite");
  }

  AffineFromCommuting out;
  out.path_interior = VertexSubset(n, 0);
  for (auto [m, c] : {std::pair{a, PathCase::first_is_affine},
                      std::pair{b, PathCase::second_is_affine}}) {
    if (detail::is_affine_witness(sys, nb, m, false)) {
      out.subset = VertexSubset(n, m);
      out.type = detail::classify_connected(sys, m);
      out.path_case = c;
      return out;
    }
  }

  const auto path = detail::shortest_path(nb, a, b);
  Mask interior = 0;
  for (std::size_t v : path) interior |= bit(v);
  interior &= ~(a | b);
  out.path_interior = VertexSubset(n, interior);
  const Mask ij = a | b;

  auto on_four_edge = [&](std::size_t x) {
    const Mask side = (a & bit(x)) ? a : b;
    for (Mask y = side; y; y &= y - 1) {
      if (sys.label(x, lowest(y)) == Label(4)) return true;
    }
    return false;
  };
  bool four = false, multiple = false;
  for (Mask p = interior; p; p &= p - 1) {
    const std::size_t v = lowest(p);
    const Mask seen_i = nb[v] & a, seen_j = nb[v] & b;
    if (popcount(seen_i) > 1 || popcount(seen_j) > 1) multiple = true;
    for (Mask x = nb[v] & ij; x; x &= x - 1) {
      const std::size_t u = lowest(x);
      if (sys.label(v, u) == Label(4) || on_four_edge(u)) four = true;
    }
  }
  std::string families;
  if (four) {
    out.path_case = PathCase::four_label_attachment;
    families = "BCF";
  } else if (multiple) {
    out.path_case = PathCase::multiple_attachments;
    families = "A";
  } else {
    out.path_case = PathCase::single_attachments;
    families = "C";
  }

  const Mask region = interior | ij;
  const auto sub = restrict_to(sys, region);
  const auto sub_nb = detail::neighbour_masks(sub);
  std::vector<std::size_t> index;
  for (Mask r = region; r; r &= r - 1) index.push_back(lowest(r));
  for (Mask m : detail::minimal_infinite_masks(sub)) {
    if (!detail::is_affine_witness(sub, sub_nb, m, false)) continue;
    const TypeClass t = detail::classify_connected(sub, m);
    if (families.find(t.family) == std::string::npos) continue;
    Mask lifted = 0;
    for (Mask x = m; x; x &= x - 1) lifted |= bit(index[lowest(x)]);
    out.subset = VertexSubset(n, lifted);
    out.type = t;
    return out;
  }

  const auto any = has_affine_parabolic(sys);
  if (!any) {
    throw std::logic_error(
        "commuting infinite subsets without an affine subset in the diagram");
  }
  out.subset = *any;
  out.type = detail::classify_connected(sys, any->bits());
  out.fallback_used = true;
  return out;
}

}  // namespace coxeter
