#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coxeter {

/// Entry m(s,t) of a Coxeter matrix: a finite order or the value infinity.
///
/// Infinity is a separate state rather than a reserved integer, so no
/// arithmetic on a label can silently treat it as a large number.
class Label {
 public:
  /// Label 2, i.e. commuting generators.
  constexpr Label() noexcept = default;
  constexpr explicit Label(std::uint32_t order) noexcept : order_(order) {}

  static constexpr Label infinity() noexcept {
    Label l;
    l.order_ = 0;
    l.infinite_ = true;
    return l;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  constexpr std::uint32_t value() const {
    if (infinite_) throw std::logic_error("Label::value() called on infinity");
    return order_;
  }

  /// True when the two generators do not commute, i.e. the diagram draws an
  /// edge.
  constexpr bool is_edge() const noexcept { return infinite_ || order_ >= 3; }

  constexpr bool operator==(const Label&) const noexcept = default;

  // Finite labels order by value, infinity is above all of them.
  constexpr std::strong_ordering operator<=>(const Label& other) const noexcept {
    if (infinite_ != other.infinite_) {
      return infinite_ ? std::strong_ordering::greater
                       : std::strong_ordering::less;
    }
    return order_ <=> other.order_;
  }

  std::string to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(order_);
  }

 private:
  std::uint32_t order_ = 2;
  bool infinite_ = false;
};

inline constexpr Label kInfinity = Label::infinity();

}  // namespace coxeter
