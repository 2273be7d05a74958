#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "coxeter/errors.hpp"
#include "coxeter/system.hpp"

namespace coxeter {

/// Isomorphism-invariant byte string of a labelled diagram.
///
/// Byte 0 is the rank; then the strictly lower triangle of the label matrix
/// under the canonical vertex order, row by row (row i lists m(i,0..i-1)).
/// A finite label m is the byte m, infinity is 255.
using CanonicalCode = std::string;

inline constexpr std::size_t kMaxCanonicalRank = 11;

struct CanonicalForm {
  CanonicalCode code;
  /// order[k] is the original vertex placed at canonical position k.
  std::vector<std::size_t> order;
};

namespace detail {

inline std::uint8_t label_byte(Label m) {
  if (m.is_infinite()) return 255;
  if (m.value() > 254) throw UnsupportedError("canonical codes store labels <= 254");
  return static_cast<std::uint8_t>(m.value());
}

inline Label byte_label(std::uint8_t b) {
  return b == 255 ? kInfinity : Label(b);
}

inline CanonicalCode encode(const CoxeterSystem& sys,
                            const std::vector<std::size_t>& order) {
  const std::size_t n = sys.rank();
  CanonicalCode code(1 + n * (n - (n > 0)) / 2, '\0');
  code[0] = static_cast<char>(n);
  std::size_t at = 1;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      code[at++] = static_cast<char>(label_byte(sys.label(order[i], order[j])));
  return code;
}

/// Canonical labelling of a connected diagram on the vertices of `mask`.
///
/// Vertices are coloured by iterated refinement (colour plus the multiset of
/// (label, neighbour colour) pairs), which is invariant under isomorphism.
/// Among orders that list vertices by non-decreasing colour, the one with the
/// smallest code is found by branch and bound: at each position only the
/// candidates with the smallest row survive, prefixes worse than the best
/// code so far are cut, and of two interchangeable vertices (equal labels to
/// every third vertex) only one is tried.
class ConnectedCanonizer {
 public:
  ConnectedCanonizer(const CoxeterSystem& sys, Mask mask) : n_(popcount(mask)) {
    std::size_t k = 0;
    for (Mask m = mask; m; m &= m - 1) vertex_[k++] = lowest(m);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        byte_[i][j] = i == j ? 1 : label_byte(sys.label(vertex_[i], vertex_[j]));
    refine();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) twin_[i][j] = i != j && twins(i, j);
    std::array<std::uint8_t, kMaxCanonicalRank> sorted{};
    std::copy(color_.begin(), color_.begin() + static_cast<long>(n_), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + static_cast<long>(n_));
    slot_color_ = sorted;
    code_len_ = n_ * (n_ - (n_ > 0)) / 2;
    search(0, 0, 0);
  }

  /// Lower-triangle bytes (without the rank byte).
  const std::array<std::uint8_t, 55>& bytes() const { return best_; }
  std::size_t size() const { return code_len_; }
  /// Original vertex indices in canonical order.
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = vertex_[best_order_[i]];
    return out;
  }

 private:
  bool twins(std::size_t a, std::size_t b) const {
    for (std::size_t x = 0; x < n_; ++x) {
      if (x != a && x != b && byte_[a][x] != byte_[b][x]) return false;
    }
    return true;
  }

  void refine() {
    color_.fill(0);
    std::size_t classes = 1;
    std::vector<std::pair<std::vector<std::uint16_t>, std::size_t>> sig(n_);
    while (true) {
      for (std::size_t v = 0; v < n_; ++v) {
        auto& s = sig[v].first;
        s.clear();
        s.push_back(color_[v]);
        std::vector<std::uint16_t> around;
        for (std::size_t u = 0; u < n_; ++u) {
          if (u == v || byte_[v][u] == 2) continue;
          around.push_back(static_cast<std::uint16_t>(byte_[v][u] << 4 | color_[u]));
        }
        std::sort(around.begin(), around.end());
        s.insert(s.end(), around.begin(), around.end());
        sig[v].second = v;
      }
      auto by_sig = sig;
      std::sort(by_sig.begin(), by_sig.end());
      std::uint8_t next = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && by_sig[i].first != by_sig[i - 1].first) ++next;
        color_[by_sig[i].second] = next;
      }
      const std::size_t now = static_cast<std::size_t>(next) + 1;
      if (now == classes) break;
      classes = now;
    }
  }

  void search(std::size_t depth, std::uint16_t used, std::size_t offset) {
    if (depth == n_) {
      if (!have_best_ || std::memcmp(cur_.data(), best_.data(), code_len_) < 0) {
        best_ = cur_;
        best_order_ = order_;
        have_best_ = true;
      }
      return;
    }
    // Smallest row among the vertices that may fill this position.
    std::array<std::uint8_t, kMaxCanonicalRank> min_row{};
    bool first = true;
    for (std::size_t v = 0; v < n_; ++v) {
      if ((used >> v & 1) || color_[v] != slot_color_[depth]) continue;
      std::array<std::uint8_t, kMaxCanonicalRank> row{};
      for (std::size_t j = 0; j < depth; ++j) row[j] = byte_[v][order_[j]];
      if (first || std::memcmp(row.data(), min_row.data(), depth) < 0) min_row = row;
      first = false;
    }
    std::memcpy(cur_.data() + offset, min_row.data(), depth);
    if (have_best_ && std::memcmp(cur_.data(), best_.data(), offset + depth) > 0) return;
    std::uint16_t tried = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if ((used >> v & 1) || color_[v] != slot_color_[depth]) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < depth && minimal; ++j)
        minimal = byte_[v][order_[j]] == min_row[j];
      if (!minimal) continue;
      bool twin_done = false;
      for (std::size_t u = 0; u < n_ && !twin_done; ++u)
        twin_done = (tried >> u & 1) && twin_[u][v];
      if (twin_done) continue;
      tried |= static_cast<std::uint16_t>(1u << v);
      order_[depth] = v;
      // Siblings may have improved the best code; the row stays valid.
      std::memcpy(cur_.data() + offset, min_row.data(), depth);
      if (have_best_ && std::memcmp(cur_.data(), best_.data(), offset + depth) > 0) return;
      search(depth + 1, static_cast<std::uint16_t>(used | 1u << v), offset + depth);
    }
  }

  std::size_t n_;
  std::array<std::size_t, kMaxCanonicalRank> vertex_{};
  std::array<std::array<std::uint8_t, kMaxCanonicalRank>, kMaxCanonicalRank> byte_{};
  std::array<std::array<bool, kMaxCanonicalRank>, kMaxCanonicalRank> twin_{};
  std::array<std::uint8_t, kMaxCanonicalRank> color_{};
  std::array<std::uint8_t, kMaxCanonicalRank> slot_color_{};
  std::array<std::size_t, kMaxCanonicalRank> order_{};
  std::array<std::size_t, kMaxCanonicalRank> best_order_{};
  std::array<std::uint8_t, 55> cur_{};
  std::array<std::uint8_t, 55> best_{};
  std::size_t code_len_ = 0;
  bool have_best_ = false;
};

}  // namespace detail

/// Canonical code together with the vertex order that realises it.
///
/// Connected diagrams use the refinement search above. A disconnected
/// diagram lists its components one after another, sorted by (size, code).
inline CanonicalForm canonical_form(const CoxeterSystem& sys) {
  require_valid(sys);
  const std::size_t n = sys.rank();
  if (n > kMaxCanonicalRank) {
    throw UnsupportedError("canonical codes support rank <= 11");
  }
  const auto nb = detail::neighbour_masks(sys);
  std::vector<std::pair<CanonicalCode, std::vector<std::size_t>>> parts;
  for (Mask c : detail::component_masks(nb, full_mask(n))) {
    detail::ConnectedCanonizer canon(sys, c);
    CanonicalCode part(1, static_cast<char>(popcount(c)));
    part.append(reinterpret_cast<const char*>(canon.bytes().data()), canon.size());
    parts.emplace_back(std::move(part), canon.order());
  }
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x.first < y.first;
  });
  CanonicalForm out;
  for (auto& p : parts) out.order.insert(out.order.end(), p.second.begin(), p.second.end());
  out.code = detail::encode(sys, out.order);
  return out;
}

inline CanonicalCode canonical_code(const CoxeterSystem& sys) {
  return canonical_form(sys).code;
}

/// Rebuilds the system a code describes (vertices in canonical order).
inline CoxeterSystem decode(const CanonicalCode& code) {
  if (code.empty()) throw InputError("empty canonical code");
  const auto n = static_cast<std::uint8_t>(code[0]);
  const std::size_t expected = 1 + static_cast<std::size_t>(n) * (n - (n > 0)) / 2;
  if (code.size() != expected) throw InputError("canonical code has the wrong length");
  CoxeterSystem sys(n);
  std::size_t at = 1;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto b = static_cast<std::uint8_t>(code[at++]);
      if (b < 2) throw InputError("canonical code holds a label below 2");
      sys.set_label(i, j, detail::byte_label(b));
    }
  }
  return sys;
}

/// The representative of the isomorphism class of `sys`.
inline CoxeterSystem canonical_system(const CoxeterSystem& sys) {
  return decode(canonical_code(sys));
}

/// Lower-case hex rendering of a code, for reports.
inline std::string code_hex(const CanonicalCode& code) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (char c : code) {
    const auto b = static_cast<std::uint8_t>(c);
    out += kDigits[b >> 4];
    out += kDigits[b & 15];
  }
  return out;
}

}  // namespace coxeter
