#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxeter/canonical.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/system.hpp"

// Line-oriented diagram text:
//
//   rank: 3
//   edge: 0 1 3
//   edge: 1 2 inf
//
// or a single `type: <name>` line such as `type: E8`, `type: I2(5)` or
// `type: ~A2`. Pairs not listed get label 2. Blank lines and lines starting
// with '#' are ignored.

namespace coxeter {

namespace detail {

struct TextEdge {
  std::size_t i, j;
  Label m;
};

inline CoxeterSystem from_text_edges(std::size_t n, const std::vector<TextEdge>& edges) {
  CoxeterSystem sys(n);
  for (const auto& e : edges) sys.set_label(e.i, e.j, e.m);
  return sys;
}

inline std::vector<TextEdge> path_edges(std::size_t n, std::size_t start = 0) {
  std::vector<TextEdge> out;
  for (std::size_t i = start; i + 1 < start + n; ++i) out.push_back({i, i + 1, Label(3)});
  return out;
}

/// Star with centre 0 and arms of the given lengths, numbered arm by arm.
inline CoxeterSystem star_diagram(const std::vector<std::size_t>& arms) {
  std::size_t n = 1;
  for (std::size_t a : arms) n += a;
  CoxeterSystem sys(n);
  std::size_t next = 1;
  for (std::size_t a : arms) {
    std::size_t prev = 0;
    for (std::size_t k = 0; k < a; ++k, ++next) {
      sys.set_label(prev, next, Label(3));
      prev = next;
    }
  }
  return sys;
}

/// Parses "<letters><digits>" after an optional '~'; nullopt if malformed.
inline std::optional<std::pair<std::string, std::size_t>> split_type_name(std::string_view s) {
  std::size_t k = 0;
  while (k < s.size() && (s[k] == '~' || std::isalpha(static_cast<unsigned char>(s[k])))) ++k;
  if (k == 0 || k == s.size()) return std::nullopt;
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(s.data() + k, s.data() + s.size(), index);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return std::make_pair(std::string(s.substr(0, k)), index);
}

}  // namespace detail

/// Standard diagram of a named type; nullopt for an unknown name.
///
/// Layouts: A_n is the path 0..n-1; B_n/C_n put the 4 on the last edge;
/// D_n and E_n attach vertex n-1 to vertex n-3 and 2 of the path 0..n-2;
/// the affine diagrams have n+1 vertices.
inline std::optional<CoxeterSystem> standard_diagram(std::string_view name) {
  using detail::from_text_edges;
  using detail::path_edges;
  if (name.rfind("I2(", 0) == 0 && name.size() > 4 && name.back() == ')') {
    const auto inner = name.substr(3, name.size() - 4);
    if (inner == "inf") return from_text_edges(2, {{0, 1, kInfinity}});
    unsigned m = 0;
    const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), m);
    if (ec != std::errc() || ptr != inner.data() + inner.size() || m < 2) return std::nullopt;
    return from_text_edges(2, {{0, 1, Label(m)}});
  }
  const auto parsed = detail::split_type_name(name);
  if (!parsed) return std::nullopt;
  const auto& [family, n] = *parsed;
  if (family == "A" && n >= 1) return from_text_edges(n, path_edges(n));
  if ((family == "B" || family == "C") && n >= 2) {
    auto e = path_edges(n);
    e.back().m = Label(4);
    return from_text_edges(n, e);
  }
  if (family == "D" && n >= 4) {
    auto e = path_edges(n - 1);
    e.push_back({n - 3, n - 1, Label(3)});
    return from_text_edges(n, e);
  }
  if (family == "E" && n >= 6 && n <= 8) {
    auto e = path_edges(n - 1);
    e.push_back({2, n - 1, Label(3)});
    return from_text_edges(n, e);
  }
  if (family == "F" && n == 4) {
    auto e = path_edges(4);
    e[1].m = Label(4);
    return from_text_edges(4, e);
  }
  if (family == "G" && n == 2) return from_text_edges(2, {{0, 1, Label(6)}});
  if (family == "H" && (n == 3 || n == 4)) {
    auto e = path_edges(n);
    e.front().m = Label(5);
    return from_text_edges(n, e);
  }
  if (family == "~A" && n == 1) return from_text_edges(2, {{0, 1, kInfinity}});
  if (family == "~A" && n >= 2) {
    auto e = path_edges(n + 1);
    e.push_back({0, n, Label(3)});
    return from_text_edges(n + 1, e);
  }
  if (family == "~B" && n == 2) return standard_diagram("~C2");
  if (family == "~B" && n >= 3) {
    auto e = path_edges(n);
    e.back().m = Label(4);
    e.push_back({1, n, Label(3)});
    return from_text_edges(n + 1, e);
  }
  if (family == "~C" && n >= 2) {
    auto e = path_edges(n + 1);
    e.front().m = Label(4);
    e.back().m = Label(4);
    return from_text_edges(n + 1, e);
  }
  if (family == "~D" && n >= 4) {
    auto e = path_edges(n - 1);
    e.push_back({1, n - 1, Label(3)});
    e.push_back({n - 3, n, Label(3)});
    return from_text_edges(n + 1, e);
  }
  if (family == "~E" && n == 6) return detail::star_diagram({2, 2, 2});
  if (family == "~E" && n == 7) return detail::star_diagram({1, 3, 3});
  if (family == "~E" && n == 8) return detail::star_diagram({1, 2, 5});
  if (family == "~F" && n == 4) {
    auto e = path_edges(5);
    e[2].m = Label(4);
    return from_text_edges(5, e);
  }
  if (family == "~G" && n == 2) return from_text_edges(3, {{0, 1, Label(3)}, {1, 2, Label(6)}});
  return std::nullopt;
}

namespace detail {

class DiagramParser {
 public:
  explicit DiagramParser(std::string_view text) : text_(text) {}

  CoxeterSystem run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      parse_line(line, line_no);
      pos = end + 1;
    }
    if (type_) return *type_;
    if (!rank_) throw fail("missing 'rank:' or 'type:' line", line_no, 1);
    return from_text_edges(*rank_, edges_);
  }

 private:
  static ParseError fail(const std::string& what, std::size_t line, std::size_t column) {
    return ParseError(line, column, what);
  }

  struct Token {
    std::string_view text;
    std::size_t column;
  };

  static std::vector<Token> tokens(std::string_view s, std::size_t from) {
    std::vector<Token> out;
    std::size_t k = from;
    while (k < s.size()) {
      while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
      if (k == s.size()) break;
      const std::size_t start = k;
      while (k < s.size() && s[k] != ' ' && s[k] != '\t') ++k;
      out.push_back({s.substr(start, k - start), start + 1});
    }
    return out;
  }

  static std::size_t number(const Token& t, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw fail("expected a non-negative integer, got '" + std::string(t.text) + "'", line,
                 t.column);
    }
    return v;
  }

  void parse_line(std::string_view line, std::size_t no) {
    std::size_t first = 0;
    while (first < line.size() && (line[first] == ' ' || line[first] == '\t')) ++first;
    if (first == line.size() || line[first] == '#') return;
    const std::size_t colon = line.find(':', first);
    if (colon == std::string_view::npos) throw fail("expected 'key: value'", no, first + 1);
    const std::string_view key = line.substr(first, colon - first);
    const auto args = tokens(line, colon + 1);
    if (key == "rank") {
      if (rank_ || type_) throw fail("diagram header given twice", no, first + 1);
      if (args.size() != 1) throw fail("'rank:' takes one integer", no, colon + 2);
      rank_ = number(args[0], no);
      if (*rank_ > kMaxTextRank) throw fail("rank too large", no, args[0].column);
    } else if (key == "type") {
      if (rank_ || type_) throw fail("diagram header given twice", no, first + 1);
      if (args.size() != 1) throw fail("'type:' takes one type name", no, colon + 2);
      type_ = standard_diagram(args[0].text);
      if (!type_) {
        throw fail("unknown type name '" + std::string(args[0].text) + "'", no,
                         args[0].column);
      }
    } else if (key == "edge") {
      if (type_) throw fail("edge lines cannot follow a type line", no, first + 1);
      if (!rank_) throw fail("'edge:' before 'rank:'", no, first + 1);
      if (args.size() != 3) throw fail("'edge:' takes <i> <j> <m>", no, colon + 2);
      const std::size_t n = rank_ ? *rank_ : 0;
      const std::size_t i = number(args[0], no);
      const std::size_t j = number(args[1], no);
      if (i >= n) throw fail("vertex index out of range", no, args[0].column);
      if (j >= n) throw fail("vertex index out of range", no, args[1].column);
      if (i >= j) throw fail("edge needs i < j", no, args[1].column);
      Label m;
      if (args[2].text == "inf") {
        m = kInfinity;
      } else {
        const std::size_t v = number(args[2], no);
        if (v < 3) throw fail("edge label must be >= 3 or inf", no, args[2].column);
        if (v > kMaxTextLabel) throw fail("edge label too large", no, args[2].column);
        m = Label(static_cast<unsigned>(v));
      }
      if (!seen_.insert({i, j}).second) throw fail("duplicate edge", no, first + 1);
      edges_.push_back({i, j, m});
    } else {
      throw fail("unknown key '" + std::string(key) + "'", no, first + 1);
    }
  }

  static constexpr std::size_t kMaxTextRank = 4096;
  static constexpr std::size_t kMaxTextLabel = 1000000;

  std::string_view text_;
  std::optional<std::size_t> rank_;
  std::optional<CoxeterSystem> type_;
  std::vector<TextEdge> edges_;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
};

}  // namespace detail

/// Parses diagram text; throws ParseError with a 1-based line and column.
inline CoxeterSystem parse_diagram(std::string_view text) {
  return detail::DiagramParser(text).run();
}

/// Diagram text for `sys`. Vertices are renumbered into canonical order when
/// the rank allows it, so isomorphic inputs render identically.
inline std::string render_diagram(const CoxeterSystem& sys) {
  require_valid(sys);
  const std::size_t n = sys.rank();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (n <= kMaxCanonicalRank) {
    bool small_labels = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Label m = sys.label(i, j);
        if (m.is_finite() && m.value() > 254) small_labels = false;
      }
    if (small_labels) order = canonical_form(sys).order;
  }
  std::ostringstream out;
  out << "rank: " << n << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Label m = sys.label(order[i], order[j]);
      if (!m.is_edge()) continue;
      out << "edge: " << i << " " << j << " ";
      if (m.is_infinite()) {
        out << "inf";
      } else {
        out << m.value();
      }
      out << "\n";
    }
  }
  return out.str();
}

/// Comma-separated labels such as "2,3,4,inf".
inline std::vector<Label> parse_label_list(std::string_view csv) {
  std::vector<Label> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t end = csv.find(',', pos);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view item = csv.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "inf") {
      out.push_back(kInfinity);
    } else {
      unsigned v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || v < 2) {
        throw InputError("bad label '" + std::string(item) + "' in label list");
      }
      out.push_back(Label(v));
    }
    pos = end + 1;
  }
  return out;
}

inline std::string label_text(Label m) {
  return m.is_infinite() ? std::string("inf") : std::to_string(m.value());
}

}  // namespace coxeter
