#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace coxeter {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

struct ArithmeticOverflow : std::overflow_error {
  ArithmeticOverflow() : std::overflow_error("64-bit overflow") {}
};

/// 64-bit integer whose operations throw instead of wrapping. Used as the
/// fast coefficient type; callers retry in BigInt on overflow.
struct CheckedInt {
  std::int64_t v = 0;

  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t x) : v(x) {}  // NOLINT: implicit by intent

  friend CheckedInt operator+(CheckedInt x, CheckedInt y) {
    std::int64_t r;
    if (__builtin_add_overflow(x.v, y.v, &r)) throw ArithmeticOverflow();
    return r;
  }
  friend CheckedInt operator-(CheckedInt x, CheckedInt y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x.v, y.v, &r)) throw ArithmeticOverflow();
    return r;
  }
  friend CheckedInt operator*(CheckedInt x, CheckedInt y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x.v, y.v, &r)) throw ArithmeticOverflow();
    return r;
  }
  CheckedInt operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw ArithmeticOverflow();
    return -v;
  }
  CheckedInt& operator+=(CheckedInt y) { return *this = *this + y; }
  CheckedInt& operator-=(CheckedInt y) { return *this = *this - y; }
  friend bool operator==(CheckedInt x, CheckedInt y) { return x.v == y.v; }
};

inline BigInt to_big(const CheckedInt& x) { return BigInt(x.v); }
inline BigInt to_big(const BigInt& x) { return x; }
inline long double to_ld(const CheckedInt& x) {
  return static_cast<long double>(x.v);
}
inline long double to_ld(const BigInt& x) { return x.convert_to<long double>(); }
inline long double to_ld(const Rational& x) {
  return x.convert_to<long double>();
}

inline int sign_of(const BigInt& x) { return x.sign(); }

/// Exact sign of a + b*sqrt(2).
inline int sign_sqrt2(const BigInt& a, const BigInt& b) {
  const int sa = sign_of(a), sb = sign_of(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2 (never equal, sqrt 2 is irrational).
  return a * a > 2 * b * b ? sa : sb;
}

}  // namespace detail

/// Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of Q(sqrt2, sqrt3), or of the ring
/// Z[sqrt2, sqrt3] when T is an integer type.
template <class T>
struct QuadraticSurd {
  T a{}, b{}, c{}, d{};

  static QuadraticSurd from_int(std::int64_t x) { return {T(x), T(0), T(0), T(0)}; }

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  QuadraticSurd operator-() const { return {-a, -b, -c, -d}; }

  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2.
    return {
        x.a * y.a + T(2) * (x.b * y.b) + T(3) * (x.c * y.c) + T(6) * (x.d * y.d),
        x.a * y.b + x.b * y.a + T(3) * (x.c * y.d + x.d * y.c),
        x.a * y.c + x.c * y.a + T(2) * (x.b * y.d + x.d * y.b),
        x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b,
    };
  }

  QuadraticSurd& operator+=(const QuadraticSurd& y) { return *this = *this + y; }
  QuadraticSurd& operator-=(const QuadraticSurd& y) { return *this = *this - y; }

  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  bool is_zero() const { return a == T(0) && b == T(0) && c == T(0) && d == T(0); }

  long double approx() const {
    constexpr long double r2 = 1.4142135623730950488016887242096981L;
    constexpr long double r3 = 1.7320508075688772935274463415058723L;
    constexpr long double r6 = 2.4494897427831780981972840747058914L;
    using detail::to_ld;
    return to_ld(a) + r2 * to_ld(b) + r3 * to_ld(c) + r6 * to_ld(d);
  }
};

/// Exact sign of a + b sqrt2 + c sqrt3 + d sqrt6: write it as p + q sqrt3 with
/// p, q in Q(sqrt2) and compare p^2 with 3 q^2 when the signs disagree.
inline int exact_sign(const BigInt& a, const BigInt& b, const BigInt& c,
                      const BigInt& d) {
  using detail::sign_sqrt2;
  const int sp = sign_sqrt2(a, b);
  const int sq = sign_sqrt2(c, d);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // p^2 - 3 q^2 = (a^2 + 2b^2 - 3c^2 - 6d^2) + (2ab - 6cd) sqrt2
  const BigInt u = a * a + 2 * b * b - 3 * c * c - 6 * d * d;
  const BigInt v = 2 * a * b - 6 * c * d;
  return sign_sqrt2(u, v) > 0 ? sp : sq;
}

/// Exact sign. For integer coefficients a long double evaluation settles
/// values that are clearly away from zero before the exact path runs.
template <class T>
int sign(const QuadraticSurd<T>& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    // Clear denominators; the sign is unchanged by a positive factor.
    BigInt l = 1;
    for (const Rational* r : {&x.a, &x.b, &x.c, &x.d}) {
      const BigInt den = boost::multiprecision::denominator(*r);
      l = l / boost::multiprecision::gcd(l, den) * den;
    }
    auto scaled = [&](const Rational& r) {
      return BigInt(boost::multiprecision::numerator(r) *
                    (l / boost::multiprecision::denominator(r)));
    };
    return exact_sign(scaled(x.a), scaled(x.b), scaled(x.c), scaled(x.d));
  } else {
    using detail::to_ld;
    const long double value = x.approx();
    const long double scale = std::fabs(to_ld(x.a)) + 2 * std::fabs(to_ld(x.b)) +
                              2 * std::fabs(to_ld(x.c)) +
                              3 * std::fabs(to_ld(x.d));
    if (std::fabs(value) > scale * 1e-12L) return value > 0 ? 1 : -1;
    using detail::to_big;
    return exact_sign(to_big(x.a), to_big(x.b), to_big(x.c), to_big(x.d));
  }
}

template <class T>
std::string to_string(const QuadraticSurd<T>& x) {
  std::string out;
  auto term = [&](const T& coeff, const char* radical) {
    if (coeff == T(0)) return;
    std::string s;
    if constexpr (std::is_same_v<T, detail::CheckedInt>) {
      s = std::to_string(coeff.v);
    } else {
      s = coeff.str();
    }
    if (!out.empty()) out += (s[0] == '-') ? " - " : " + ";
    else if (s[0] == '-') out += "-";
    if (s[0] == '-') s.erase(0, 1);
    out += s;
    out += radical;
  };
  term(x.a, "");
  term(x.b, "*sqrt2");
  term(x.c, "*sqrt3");
  term(x.d, "*sqrt6");
  return out.empty() ? "0" : out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const QuadraticSurd<T>& x) {
  return os << to_string(x);
}

}  // namespace coxeter
