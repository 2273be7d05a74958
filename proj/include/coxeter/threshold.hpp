#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "coxeter/errors.hpp"
#include "coxeter/parabolic.hpp"
#include "coxeter/surd.hpp"
#include "coxeter/system.hpp"

namespace coxeter {

namespace detail {

/// Below this bound Miller-Rabin with the first 13 prime bases is a proof of
/// primality.
inline const BigInt& miller_rabin_proven_limit() {
  static const BigInt limit("3317044064679887385961981");
  return limit;
}

/// Miller-Rabin with the first 13 primes as bases.
inline bool is_probable_prime(const BigInt& n) {
  static constexpr std::array<unsigned, 13> kBases{2,  3,  5,  7,  11, 13, 17,
                                                  19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (unsigned p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned base : kBases) {
    BigInt x = boost::multiprecision::powm(BigInt(base), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s && composite; ++r) {
      x = x * x % n;
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// floor(n^(1/k)) for n >= 0, k >= 1.
inline BigInt integer_root(const BigInt& n, unsigned k) {
  if (k == 1 || n < 2) return n;
  // Bisection on [0, 2^(bits/k + 1)].
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  BigInt lo = 0, hi = BigInt(1) << (bits / k + 1);
  while (lo < hi) {
    const BigInt mid = (lo + hi + 1) >> 1;
    if (boost::multiprecision::pow(mid, k) <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

inline bool is_prime_power(const BigInt& n) {
  if (n < 2) return false;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned k = 1; k <= bits; ++k) {
    const BigInt r = integer_root(n, k);
    if (r < 2) break;
    if (boost::multiprecision::pow(r, k) == n && is_probable_prime(r)) return true;
  }
  return false;
}

}  // namespace detail

/// Field-size bound 1764^d / 25 and the smallest prime power meeting it.
struct KazhdanThreshold {
  std::size_t d = 0;
  Rational bound;
  /// The bound written exactly in decimal (it always has two decimals).
  std::string bound_decimal;
  BigInt q;
  /// False when q lies beyond the range where the primality test is a proof.
  bool q_proven = true;
};

inline KazhdanThreshold kazhdan_threshold_for_rank(std::size_t d) {
  if (d == 0) throw InputError("threshold needs a spherical rank d >= 1");
  KazhdanThreshold t;
  t.d = d;
  const BigInt power = boost::multiprecision::pow(BigInt(1764), static_cast<unsigned>(d));
  t.bound = Rational(power, 25);
  // power / 25 = (4 * power) / 100; 4 * power is never a multiple of 5.
  const BigInt hundredths = power * 4;
  std::string frac = BigInt(hundredths % 100).str();
  if (frac.size() < 2) frac.insert(0, "0");
  t.bound_decimal = BigInt(hundredths / 100).str() + "." + frac;
  BigInt q = power / 25 + 1;
  while (!detail::is_prime_power(q)) ++q;
  t.q = q;
  t.q_proven = q < detail::miller_rabin_proven_limit();
  return t;
}

/// Threshold for d = max_spherical_rank(sys).
inline KazhdanThreshold kazhdan_threshold(const CoxeterSystem& sys) {
  return kazhdan_threshold_for_rank(max_spherical_rank(sys));
}

}  // namespace coxeter
