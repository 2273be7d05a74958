#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "coxeter/system.hpp"

namespace testing_support {

using coxeter::CoxeterSystem;
using coxeter::Label;

struct Edge {
  std::size_t i, j;
  Label m;
};

inline Label L(unsigned m) { return Label(m); }
inline const Label kInf = coxeter::kInfinity;

inline CoxeterSystem from_edges(std::size_t n, const std::vector<Edge>& edges) {
  CoxeterSystem s(n);
  for (const auto& e : edges) s.set_label(e.i, e.j, e.m);
  return s;
}

/// Path 0-1-...-k with the given labels.
inline CoxeterSystem path(const std::vector<unsigned>& labels) {
  CoxeterSystem s(labels.size() + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) s.set_label(i, i + 1, Label(labels[i]));
  return s;
}

inline CoxeterSystem cycle(const std::vector<unsigned>& labels) {
  const std::size_t n = labels.size();
  CoxeterSystem s(n);
  for (std::size_t i = 0; i < n; ++i) s.set_label(i, (i + 1) % n, Label(labels[i]));
  return s;
}

inline CoxeterSystem triangle(unsigned a, unsigned b, unsigned c) {
  return cycle({a, b, c});
}

/// Tree with a centre and three arms of the given lengths, all labels 3.
inline CoxeterSystem star(std::size_t p, std::size_t q, std::size_t r) {
  CoxeterSystem s(1 + p + q + r);
  std::size_t next = 1;
  for (std::size_t len : {p, q, r}) {
    std::size_t prev = 0;
    for (std::size_t k = 0; k < len; ++k) {
      s.set_label(prev, next, Label(3));
      prev = next++;
    }
  }
  return s;
}

/// Uniformly random labels from `labels` on every pair.
inline CoxeterSystem random_system(std::mt19937& rng, std::size_t n,
                                   const std::vector<Label>& labels) {
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  CoxeterSystem s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.set_label(i, j, labels[pick(rng)]);
  return s;
}

inline std::vector<std::size_t> random_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Brute-force isomorphism test over all vertex permutations.
inline bool isomorphic(const CoxeterSystem& a, const CoxeterSystem& b) {
  if (a.rank() != b.rank()) return false;
  std::vector<std::size_t> p(a.rank());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool same = true;
    for (std::size_t i = 0; i < a.rank() && same; ++i)
      for (std::size_t j = i + 1; j < a.rank() && same; ++j)
        same = a.label(i, j) == b.label(p[i], p[j]);
    if (same) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace testing_support
