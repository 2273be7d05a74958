#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "coxeter/surd.hpp"
#include "coxeter/system.hpp"

namespace coxeter {

/// Cosine form B(s,t) = -cos(pi / m(s,t)) of the geometric representation,
/// with B(s,s) = 1 and B(s,t) = -1 when m(s,t) is infinite.
///
/// Crystallographic systems get exact entries in Q(sqrt2, sqrt3); every system
/// gets a double approximation with a recorded absolute error bound.
struct GramMatrix {
  std::size_t rank = 0;
  bool exact = false;
  std::vector<QuadraticSurd<Rational>> exact_entries;  // row-major, if exact
  std::vector<double> approx;                          // row-major
  double error_bound = 0.0;

  const QuadraticSurd<Rational>& exact_at(std::size_t s, std::size_t t) const {
    return exact_entries.at(s * rank + t);
  }
  double at(std::size_t s, std::size_t t) const { return approx[s * rank + t]; }
};

namespace detail {

/// Entry of the doubled form 2B, which lies in Z[sqrt2, sqrt3] for
/// crystallographic labels.
template <class T>
QuadraticSurd<T> doubled_gram_entry(Label m) {
  if (m == Label(1)) return {T(2), T(0), T(0), T(0)};
  if (m == Label(2)) return {};
  if (m == Label(3)) return {T(-1), T(0), T(0), T(0)};
  if (m == Label(4)) return {T(0), T(-1), T(0), T(0)};
  if (m == Label(6)) return {T(0), T(0), T(-1), T(0)};
  if (m.is_infinite()) return {T(-2), T(0), T(0), T(0)};
  throw InputError("label " + m.to_string() + " is not crystallographic");
}

inline double cosine_entry(Label m) {
  if (m.is_infinite()) return -1.0;
  if (m == Label(1)) return 1.0;
  return -std::cos(std::numbers::pi / static_cast<double>(m.value()));
}

/// Characteristic polynomial det(xI - A) by the division-free
/// Samuelson-Berkowitz recurrence; coefficients from x^n down to x^0.
template <class T>
std::vector<QuadraticSurd<T>> characteristic_polynomial(
    const std::vector<QuadraticSurd<T>>& a, std::size_t n) {
  using S = QuadraticSurd<T>;
  if (n == 0) return {S::from_int(1)};
  auto at = [&](std::size_t i, std::size_t j) -> const S& { return a[i * n + j]; };

  // Characteristic polynomial of the trailing 1x1 block, then grow upwards.
  std::vector<S> poly{S::from_int(1), -at(n - 1, n - 1)};
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t m = n - k;  // size of the current block
    // Toeplitz column: 1, -a, -R C, -R M C, ..., -R M^{m-2} C
    std::vector<S> t;
    t.reserve(m + 1);
    t.push_back(S::from_int(1));
    t.push_back(-at(k, k));
    std::vector<S> vec(m - 1), next(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) vec[i] = at(k + 1 + i, k);
    for (std::size_t power = 0; power + 1 < m; ++power) {
      S dot{};
      for (std::size_t i = 0; i + 1 < m; ++i) dot += at(k, k + 1 + i) * vec[i];
      t.push_back(-dot);
      if (power + 2 < m) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
          S acc{};
          for (std::size_t j = 0; j + 1 < m; ++j) {
            acc += at(k + 1 + i, k + 1 + j) * vec[j];
          }
          next[i] = acc;
        }
        vec.swap(next);
      }
    }
    std::vector<S> grown(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
      S acc{};
      for (std::size_t j = 0; j <= std::min(i, m - 1); ++j) acc += t[i - j] * poly[j];
      grown[i] = acc;
    }
    poly.swap(grown);
  }
  return poly;
}

}  // namespace detail

inline GramMatrix gram_matrix(const CoxeterSystem& sys) {
  require_valid(sys);
  const std::size_t n = sys.rank();
  GramMatrix g;
  g.rank = n;
  g.exact = is_crystallographic(sys);
  g.approx.resize(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      g.approx[s * n + t] = detail::cosine_entry(sys.label(s, t));
    }
  }
  g.error_bound = g.exact ? std::numeric_limits<double>::epsilon()
                          : 4 * std::numeric_limits<double>::epsilon();
  if (g.exact) {
    g.exact_entries.reserve(n * n);
    const Rational half(1, 2);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        auto e = detail::doubled_gram_entry<BigInt>(sys.label(s, t));
        g.exact_entries.push_back({Rational(e.a) * half, Rational(e.b) * half,
                                   Rational(e.c) * half, Rational(e.d) * half});
      }
    }
  }
  return g;
}

/// Inertia of the cosine form: counts of positive, zero and negative
/// eigenvalues.
struct Signature {
  std::size_t positive = 0;
  std::size_t zero = 0;
  std::size_t negative = 0;
  bool operator==(const Signature&) const = default;
};

struct SignatureResult {
  /// Empty when the approximate path could not separate an eigenvalue from 0.
  std::optional<Signature> value;
  bool exact = false;
};

namespace detail {

/// Inertia from the coefficient signs of a real-rooted polynomial: with all
/// roots real, Descartes' rule of signs is exact.
inline Signature signature_from_coefficient_signs(const std::vector<int>& signs) {
  const std::size_t n = signs.size() - 1;
  std::size_t zero = 0;
  while (zero < n && signs[n - zero] == 0) ++zero;
  std::size_t changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return {changes, zero, n - zero - changes};
}

template <class T>
std::vector<int> doubled_charpoly_signs(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  std::vector<QuadraticSurd<T>> a;
  a.reserve(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      a.push_back(doubled_gram_entry<T>(sys.label(s, t)));
  const auto poly = characteristic_polynomial(a, n);
  std::vector<int> signs;
  signs.reserve(poly.size());
  for (const auto& c : poly) signs.push_back(sign(c));
  return signs;
}

}  // namespace detail

/// Exact inertia of the cosine form of a crystallographic system.
///
/// The characteristic polynomial of 2B is computed exactly over
/// Z[sqrt2, sqrt3] (64-bit coefficients, retried in big integers on overflow)
/// and its coefficient signs are decided exactly.
inline Signature exact_signature(const CoxeterSystem& sys) {
  if (!is_crystallographic(sys)) {
    throw InputError("exact signature needs crystallographic labels");
  }
  std::vector<int> signs;
  try {
    signs = detail::doubled_charpoly_signs<detail::CheckedInt>(sys);
  } catch (const detail::ArithmeticOverflow&) {
    signs = detail::doubled_charpoly_signs<BigInt>(sys);
  }
  return detail::signature_from_coefficient_signs(signs);
}

/// Floating-point inertia; empty if some eigenvalue lies within the backward
/// error bound of zero.
inline std::optional<Signature> approximate_signature(const CoxeterSystem& sys) {
  const GramMatrix g = gram_matrix(sys);
  const auto n = static_cast<Eigen::Index>(g.rank);
  if (n == 0) return Signature{};
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t)
      b(s, t) = g.at(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const double eps = std::numeric_limits<double>::epsilon();
  const double bound = 64.0 * static_cast<double>(n) * eps * b.norm() +
                       static_cast<double>(n) * g.error_bound;
  Signature sig;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (std::fabs(lambda) <= bound) return std::nullopt;
    (lambda > 0 ? sig.positive : sig.negative) += 1;
  }
  return sig;
}

inline SignatureResult signature(const CoxeterSystem& sys) {
  require_valid(sys);
  if (is_crystallographic(sys)) return {exact_signature(sys), true};
  return {approximate_signature(sys), false};
}

}  // namespace coxeter
