#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coxeter/system.hpp"

namespace coxeter {

enum class TypeKind { spherical, affine, indefinite };

/// Type of an irreducible diagram.
///
/// `index` is the usual subscript: the rank for spherical families and rank-1
/// for affine families (~A2 has three vertices). Spherical B_n and C_n share a
/// diagram and are reported as B_n with alias C_n; affine ~B_n and ~C_n are
/// different shapes, except ~B2 which is an alias of ~C2.
struct TypeClass {
  TypeKind kind = TypeKind::indefinite;
  char family = 0;
  unsigned index = 0;
  unsigned dihedral_order = 0;  // m for I2(m)
  std::size_t rank = 0;

  static TypeClass spherical(char family, unsigned index) {
    return {TypeKind::spherical, family, index, 0, index};
  }
  static TypeClass dihedral(unsigned m) {
    return {TypeKind::spherical, 'I', 2, m, 2};
  }
  static TypeClass affine(char family, unsigned index) {
    return {TypeKind::affine, family, index, 0, std::size_t{index} + 1};
  }
  static TypeClass indefinite(std::size_t rank) {
    return {TypeKind::indefinite, 0, 0, 0, rank};
  }

  bool is_spherical() const noexcept { return kind == TypeKind::spherical; }
  bool is_affine() const noexcept { return kind == TypeKind::affine; }
  bool is_indefinite() const noexcept { return kind == TypeKind::indefinite; }

  std::string name() const {
    switch (kind) {
      case TypeKind::spherical:
        if (family == 'I') return "I2(" + std::to_string(dihedral_order) + ")";
        return std::string(1, family) + std::to_string(index);
      case TypeKind::affine:
        return "~" + std::string(1, family) + std::to_string(index);
      case TypeKind::indefinite:
        break;
    }
    return "indefinite";
  }

  std::vector<std::string> aliases() const {
    std::vector<std::string> out;
    if (kind == TypeKind::spherical) {
      if (family == 'B') out.push_back("C" + std::to_string(index));
      if (family == 'A' && index == 2) out.push_back("I2(3)");
      if (family == 'B' && index == 2) out.push_back("I2(4)");
      if (family == 'G') out.push_back("I2(6)");
    } else if (kind == TypeKind::affine) {
      if (family == 'C' && index == 2) out.push_back("~B2");
      if (family == 'A' && index == 1) out.push_back("I2(inf)");
    }
    return out;
  }

  bool operator==(const TypeClass&) const = default;
};

inline const char* kind_name(TypeKind k) {
  switch (k) {
    case TypeKind::spherical: return "spherical";
    case TypeKind::affine: return "affine";
    case TypeKind::indefinite: break;
  }
  return "indefinite";
}

namespace detail {

/// Pattern classification of the connected sub-diagram on `mask`.
///
/// Recognises exactly the shapes of the finite and affine classification
/// tables: paths, the single cycle of ~A_n, one- and two-fork trees, and the
/// four-leaf star of ~D4, each with its admissible label sequence. Anything
/// else is indefinite.
inline TypeClass classify_connected(const CoxeterSystem& sys, Mask mask) {
  const std::size_t n = popcount(mask);
  std::array<std::size_t, kMaxSubsetRank> vs{};
  {
    std::size_t k = 0;
    for (Mask m = mask; m; m &= m - 1) vs[k++] = lowest(m);
  }
  if (n == 1) return TypeClass::spherical('A', 1);
  if (n == 2) {
    const Label m = sys.label(vs[0], vs[1]);
    if (m.is_infinite()) return TypeClass::affine('A', 1);
    switch (m.value()) {
      case 3: return TypeClass::spherical('A', 2);
      case 4: return TypeClass::spherical('B', 2);
      case 6: return TypeClass::spherical('G', 2);
      default: return TypeClass::dihedral(m.value());
    }
  }

  const auto indefinite = TypeClass::indefinite(n);
  std::array<std::uint8_t, kMaxSubsetRank> deg{};
  std::array<std::array<std::uint8_t, 4>, kMaxSubsetRank> adj{};
  std::array<std::array<std::uint32_t, 4>, kMaxSubsetRank> lab{};
  std::size_t edges = 0, non3 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Label l = sys.label(vs[i], vs[j]);
      if (!l.is_edge()) continue;
      if (l.is_infinite()) return indefinite;
      const std::uint32_t v = l.value();
      if (v > 6 || deg[i] == 4 || deg[j] == 4) return indefinite;
      adj[i][deg[i]] = static_cast<std::uint8_t>(j);
      lab[i][deg[i]++] = v;
      adj[j][deg[j]] = static_cast<std::uint8_t>(i);
      lab[j][deg[j]++] = v;
      ++edges;
      if (v != 3) ++non3;
    }
  }
  if (edges > n) return indefinite;
  if (edges == n) {
    for (std::size_t i = 0; i < n; ++i)
      if (deg[i] != 2) return indefinite;
    return non3 == 0 ? TypeClass::affine('A', static_cast<unsigned>(n - 1))
                     : indefinite;
  }
  if (non3 > 2) return indefinite;

  // From here on the diagram is a tree.
  std::vector<std::size_t> fork3, fork4;
  for (std::size_t i = 0; i < n; ++i) {
    if (deg[i] == 3) fork3.push_back(i);
    if (deg[i] == 4) fork4.push_back(i);
  }
  const auto un = static_cast<unsigned>(n);

  if (!fork4.empty()) {
    return (fork4.size() == 1 && fork3.empty() && n == 5 && non3 == 0)
               ? TypeClass::affine('D', 4)
               : indefinite;
  }

  // Walks from `from` into neighbour slot `slot` until a leaf; returns the
  // labels met along the way.
  auto walk = [&](std::size_t from, std::size_t slot) {
    std::vector<std::uint32_t> labels{lab[from][slot]};
    std::size_t prev = from, cur = adj[from][slot];
    while (deg[cur] == 2) {
      const std::size_t k = adj[cur][0] == prev ? 1 : 0;
      labels.push_back(lab[cur][k]);
      prev = cur;
      cur = adj[cur][k];
    }
    return labels;
  };

  if (fork3.empty()) {
    std::size_t end = 0;
    while (deg[end] != 1) ++end;
    const auto seq = walk(end, 0);
    if (non3 == 0) return TypeClass::spherical('A', un);
    std::vector<std::size_t> pos;
    for (std::size_t p = 0; p < seq.size(); ++p)
      if (seq[p] != 3) pos.push_back(p);
    const std::size_t last = seq.size() - 1;
    if (non3 == 1) {
      const std::size_t p = pos[0];
      const bool at_end = p == 0 || p == last;
      switch (seq[p]) {
        case 4:
          if (at_end) return TypeClass::spherical('B', un);
          if (n == 4) return TypeClass::spherical('F', 4);
          if (n == 5) return TypeClass::affine('F', 4);
          return indefinite;
        case 5:
          if (at_end && n == 3) return TypeClass::spherical('H', 3);
          if (at_end && n == 4) return TypeClass::spherical('H', 4);
          return indefinite;
        case 6:
          return n == 3 ? TypeClass::affine('G', 2) : indefinite;
        default:
          return indefinite;
      }
    }
    if (seq[pos[0]] == 4 && seq[pos[1]] == 4 && pos[0] == 0 && pos[1] == last) {
      return TypeClass::affine('C', un - 1);
    }
    return indefinite;
  }

  if (fork3.size() == 1) {
    const std::size_t c = fork3[0];
    std::array<std::vector<std::uint32_t>, 3> arms{walk(c, 0), walk(c, 1),
                                                   walk(c, 2)};
    if (non3 == 0) {
      std::array<std::size_t, 3> len{arms[0].size(), arms[1].size(),
                                     arms[2].size()};
      std::sort(len.begin(), len.end());
      const auto [a, b, k] = len;
      if (a == 1 && b == 1) return TypeClass::spherical('D', un);
      if (a == 1 && b == 2 && k <= 4) return TypeClass::spherical('E', un);
      if (a == 1 && b == 2 && k == 5) return TypeClass::affine('E', 8);
      if (a == 1 && b == 3 && k == 3) return TypeClass::affine('E', 7);
      if (a == 2 && b == 2 && k == 2) return TypeClass::affine('E', 6);
      return indefinite;
    }
    if (non3 == 1) {
      // ~B_n: two single-vertex arms, the 4 closes off the third arm.
      for (std::size_t i = 0; i < 3; ++i) {
        if (arms[i].back() != 4) continue;
        const bool others_short = arms[(i + 1) % 3].size() == 1 &&
                                  arms[(i + 2) % 3].size() == 1;
        if (others_short) return TypeClass::affine('B', un - 1);
      }
    }
    return indefinite;
  }

  if (fork3.size() == 2 && non3 == 0) {
    for (std::size_t c : fork3) {
      std::size_t leaves = 0;
      for (std::size_t k = 0; k < 3; ++k) leaves += deg[adj[c][k]] == 1;
      if (leaves != 2) return indefinite;
    }
    return TypeClass::affine('D', un - 1);
  }
  return indefinite;
}

/// Every component of the sub-diagram on `mask` is spherical.
inline bool is_spherical_mask(const CoxeterSystem& sys,
                              const std::vector<Mask>& nb, Mask mask) {
  for (Mask c : component_masks(nb, mask))
    if (!classify_connected(sys, c).is_spherical()) return false;
  return true;
}

/// Every component of the sub-diagram on `mask` is spherical or affine.
inline bool is_spherical_or_affine_mask(const CoxeterSystem& sys,
                                        const std::vector<Mask>& nb, Mask mask) {
  for (Mask c : component_masks(nb, mask))
    if (classify_connected(sys, c).is_indefinite()) return false;
  return true;
}

}  // namespace detail

/// Classification of a connected system against the finite and affine tables.
inline TypeClass classify_irreducible(const CoxeterSystem& sys) {
  require_valid(sys);
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("classification supports rank <= 64");
  }
  if (!is_irreducible(sys)) {
    throw InputError("classify_irreducible needs a connected diagram");
  }
  return detail::classify_connected(sys, full_mask(sys.rank()));
}

struct ComponentType {
  VertexSubset vertices;
  TypeClass type;
};

/// Componentwise classification, components ordered by smallest member.
inline std::vector<ComponentType> classify(const CoxeterSystem& sys) {
  require_valid(sys);
  std::vector<ComponentType> out;
  for (const auto& c : components(sys)) {
    out.push_back({c, detail::classify_connected(sys, c.bits())});
  }
  return out;
}

/// The group is finite: every component is spherical.
inline bool is_spherical(const CoxeterSystem& sys) {
  for (const auto& c : classify(sys))
    if (!c.type.is_spherical()) return false;
  return true;
}

/// Every special subgroup on at most k generators is finite.
inline bool is_k_spherical(const CoxeterSystem& sys, std::size_t k) {
  require_valid(sys);
  if (k == 0) throw InputError("k-sphericity needs k >= 1");
  if (sys.rank() > kMaxSubsetRank) {
    throw UnsupportedError("k-sphericity supports rank <= 64");
  }
  const auto nb = detail::neighbour_masks(sys);
  const std::size_t n = sys.rank();
  // Grow subsets by increasing index; a non-spherical subset has no
  // spherical superset, so the first failure settles the answer.
  bool ok = true;
  auto grow = [&](auto&& self, Mask current, std::size_t next) -> void {
    for (std::size_t i = next; i < n && ok; ++i) {
      const Mask m = current | bit(i);
      if (!detail::is_spherical_mask(sys, nb, m)) {
        ok = false;
        return;
      }
      if (popcount(m) < k) self(self, m, i + 1);
    }
  };
  grow(grow, 0, 0);
  return ok;
}

}  // namespace coxeter
