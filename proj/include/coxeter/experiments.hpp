#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "coxeter/canonical.hpp"
#include "coxeter/classify.hpp"
#include "coxeter/diagram_text.hpp"
#include "coxeter/enumerate.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/gram.hpp"
#include "coxeter/hyperbolic.hpp"
#include "coxeter/parabolic.hpp"
#include "coxeter/report.hpp"

namespace coxeter {

enum class LemmaMode { simply_laced, three_spherical_crystallographic };

inline const char* lemma_mode_name(LemmaMode m) {
  return m == LemmaMode::simply_laced ? "simply-laced" : "three-spherical";
}

/// Largest rank the exhaustive part of the engine-agreement campaign covers;
/// above it the campaign switches to the closure method.
inline constexpr std::size_t kExhaustiveAgreementRank = 6;

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::size_t worker_count(std::size_t items, std::size_t jobs) {
  return std::max<std::size_t>(1, std::min(jobs, items));
}

/// Calls body(state[t], i) for every i < count, item i on worker i % workers.
/// Returns the per-worker states; merging them is up to the caller.
template <class State, class Body>
std::vector<State> parallel_reduce(std::size_t count, std::size_t jobs, Body body) {
  const std::size_t workers = worker_count(count, jobs);
  std::vector<State> states(workers);
  auto run = [&](std::size_t t) {
    for (std::size_t i = t; i < count; i += workers) body(states[t], i);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(run, t);
    for (auto& th : threads) th.join();
  }
  return states;
}

/// A failed check on item `index`, with the two verdicts that disagree.
struct Failure {
  std::size_t index;
  std::string first;
  std::string second;
  bool operator<(const Failure& o) const { return index < o.index; }
};

struct FailureLog {
  std::size_t count = 0;
  std::vector<Counterexample> kept;

  void add(const CanonicalCode& code, std::string first, std::string second) {
    ++count;
    if (kept.size() < kMaxCounterexamples) {
      kept.push_back({code_hex(code), render_diagram(decode(code)), std::move(first),
                      std::move(second)});
    }
  }

  /// Adds failures gathered by workers, in item order.
  void add_all(std::vector<Failure> fails, const std::vector<CanonicalCode>& codes) {
    std::sort(fails.begin(), fails.end());
    for (auto& f : fails) add(codes[f.index], std::move(f.first), std::move(f.second));
  }
};

inline Claim make_claim(std::string name, const FailureLog& log, std::string pass_detail) {
  Claim c;
  c.name = std::move(name);
  c.pass = log.count == 0;
  c.detail = c.pass ? std::move(pass_detail)
                    : "tool inconsistency: " + std::to_string(log.count) + " counterexample(s)";
  c.counterexamples = log.kept;
  return c;
}

inline void check_campaign_rank(std::size_t n, std::size_t cap, const std::string& what) {
  if (n == 0) throw InputError(what + " needs max rank >= 1");
  if (n > cap) {
    throw UnsupportedError(what + " supports max rank <= " + std::to_string(cap));
  }
}

inline Json labels_json(const std::vector<Label>& labels) {
  Json j = Json::array();
  for (Label m : labels) {
    if (m.is_infinite()) {
      j.push_back("inf");
    } else {
      j.push_back(m.value());
    }
  }
  return j;
}

inline std::string signature_text(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.zero) + "," +
         std::to_string(s.negative) + ")";
}

inline std::string subset_text(const VertexSubset& s) {
  std::string out = "{";
  for (std::size_t i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

inline Json diagram_json(const CanonicalCode& code) {
  const CoxeterSystem sys = decode(code);
  Json j;
  j["code"] = code_hex(code);
  j["rank"] = sys.rank();
  j["diagram"] = render_diagram(sys);
  return j;
}

inline bool contains_labels(const std::vector<Label>& labels, std::initializer_list<Label> need) {
  for (Label m : need)
    if (std::find(labels.begin(), labels.end(), m) == labels.end()) return false;
  return true;
}

/// Does the signature match what the pattern engine claims?
inline bool engines_agree(const TypeClass& t, const Signature& s, std::size_t n) {
  switch (t.kind) {
    case TypeKind::spherical: return s == Signature{n, 0, 0};
    case TypeKind::affine: return n >= 1 && s == Signature{n - 1, 1, 0};
    case TypeKind::indefinite: return s.negative >= 1;
  }
  return false;
}

/// Names of the spherical and affine table entries with at most `max_rank`
/// vertices, with standard_diagram layouts.
inline std::vector<std::string> table_names(std::size_t max_rank) {
  std::vector<std::string> out;
  auto add = [&](const std::string& name, std::size_t vertices) {
    if (vertices <= max_rank) out.push_back(name);
  };
  for (std::size_t n = 1; n <= max_rank; ++n) {
    add("A" + std::to_string(n), n);
    if (n >= 2) add("B" + std::to_string(n), n);
    if (n >= 4) add("D" + std::to_string(n), n);
    if (n >= 6 && n <= 8) add("E" + std::to_string(n), n);
    add("~A" + std::to_string(n), n + 1);
    if (n >= 3) add("~B" + std::to_string(n), n + 1);
    if (n >= 2) add("~C" + std::to_string(n), n + 1);
    if (n >= 4) add("~D" + std::to_string(n), n + 1);
    if (n >= 6 && n <= 8) add("~E" + std::to_string(n), n + 1);
  }
  add("F4", 4);
  add("G2", 2);
  add("H3", 3);
  add("H4", 4);
  add("I2(5)", 2);
  add("~F4", 5);
  add("~G2", 3);
  return out;
}

}  // namespace detail

/// Runs lemma_dynkin_check over every connected diagram of the class up to
/// `max_rank`: simply laced (rank <= 7) or crystallographic 3-spherical
/// (rank <= 6).
inline Report verify_lemma_dynkin(LemmaMode mode, std::size_t max_rank, std::size_t jobs = 1) {
  detail::Stopwatch clock;
  const bool sl = mode == LemmaMode::simply_laced;
  detail::check_campaign_rank(max_rank, sl ? 7 : 6, "lemma-dynkin campaign");
  EnumFilter f;
  f.connected_only = true;
  if (sl) {
    f.labels = {Label(2), Label(3)};
    f.simply_laced = true;
  } else {
    f.labels = {Label(2), Label(3), Label(4), Label(6)};
    f.crystallographic = true;
    f.k_spherical = 3;
  }
  Report r;
  r.campaign = "lemma-dynkin";
  r.jobs = jobs;
  r.parameters["mode"] = lemma_mode_name(mode);
  r.parameters["max_rank"] = max_rank;
  r.parameters["labels"] = detail::labels_json(f.labels);
  r.parameters["connected_only"] = true;
  r.parameters["k_spherical"] = sl ? Json(nullptr) : Json(3);

  detail::FailureLog lemma, hypotheses;
  for (std::size_t n = 1; n <= max_rank; ++n) {
    const auto codes = enumerate_codes(n, f, jobs);
    struct Tally {
      std::size_t hyperbolic = 0, affine = 0;
      std::vector<detail::Failure> lemma, hypotheses;
    };
    auto tallies = detail::parallel_reduce<Tally>(codes.size(), jobs, [&](Tally& t, std::size_t i) {
      const CoxeterSystem sys = decode(codes[i]);
      const auto res = lemma_dynkin_check(sys);
      t.hyperbolic += res.hyperbolic;
      t.affine += res.affine_parabolic.has_value();
      if (!res.hypotheses_ok) {
        t.hypotheses.push_back({i, "enumerated in class", "lemma hypotheses fail"});
      }
      if (!res.lemma_consistent) {
        t.lemma.push_back(
            {i, std::string("is_hyperbolic: ") + (res.hyperbolic ? "hyperbolic" : "not_hyperbolic"),
             "has_affine_parabolic: " + (res.affine_parabolic
                                             ? detail::subset_text(*res.affine_parabolic)
                                             : std::string("none"))});
      }
    });
    std::size_t hyperbolic = 0, affine = 0;
    std::vector<detail::Failure> lemma_fails, hyp_fails;
    for (auto& t : tallies) {
      hyperbolic += t.hyperbolic;
      affine += t.affine;
      lemma_fails.insert(lemma_fails.end(), t.lemma.begin(), t.lemma.end());
      hyp_fails.insert(hyp_fails.end(), t.hypotheses.begin(), t.hypotheses.end());
    }
    const std::size_t inconsistent = lemma_fails.size();
    lemma.add_all(std::move(lemma_fails), codes);
    hypotheses.add_all(std::move(hyp_fails), codes);
    Json row;
    row["rank"] = n;
    row["classes"] = codes.size();
    row["hyperbolic"] = hyperbolic;
    row["with_affine_parabolic"] = affine;
    row["inconsistencies"] = inconsistent;
    r.per_rank.push_back(row);
  }
  r.claims.push_back(detail::make_claim("hypotheses_hold", hypotheses,
                                        "every enumerated class satisfies the hypotheses"));
  r.claims.push_back(detail::make_claim("hyperbolic_iff_no_affine_parabolic", lemma,
                                        "zero inconsistencies"));
  r.wall_seconds = clock.seconds();
  return r;
}

/// Codes of rank-`rank` diagrams (connected or not) whose components are all
/// spherical or affine.
inline std::vector<CanonicalCode> spherical_or_affine_codes(std::size_t rank,
                                                            const std::vector<Label>& labels,
                                                            std::size_t jobs = 1) {
  detail::check_rank(rank);
  if (rank == 0) return {canonical_code(CoxeterSystem(0))};
  ExtensionRule rule;
  rule.proper = Hereditary::spherical_or_affine;
  rule.accept = [](const CoxeterSystem& c) {
    return detail::satisfies_mask(Hereditary::spherical_or_affine, c, detail::neighbour_masks(c),
                                  full_mask(c.rank()));
  };
  auto level = rank_one_codes();
  for (std::size_t r = 2; r <= rank; ++r) level = extend_codes(level, labels, rule, jobs);
  return level;
}

/// Compares the pattern classifier with the exact Gram signature on every
/// connected diagram over a crystallographic label set, ranks 1..max_rank (<= 8).
///
/// Ranks up to 6 are enumerated exhaustively. Above that the campaign checks
/// every connected one-vertex extension of a diagram whose components are all
/// spherical or affine. Any other connected diagram X has an indefinite
/// component in each X - v. The pattern engine then calls X indefinite, since
/// its spherical and affine tables are closed under vertex deletion (checked
/// here as its own claim). The Gram form of X contains that component's form,
/// which has a negative eigenvalue by agreement at lower rank, so by
/// interlacing X has one too.
inline Report verify_engine_agreement(std::size_t max_rank, const std::vector<Label>& label_set,
                                      std::size_t jobs = 1) {
  detail::Stopwatch clock;
  detail::check_campaign_rank(max_rank, 8, "engine-agreement campaign");
  EnumFilter f;
  f.labels = label_set;
  f.connected_only = true;
  f.validate();
  for (Label m : label_set) {
    if (!is_crystallographic_label(m)) {
      throw InputError("engine-agreement campaign needs crystallographic labels");
    }
  }
  const auto labels = f.effective_labels();
  Report r;
  r.campaign = "engine-agreement";
  r.jobs = jobs;
  r.parameters["max_rank"] = max_rank;
  r.parameters["labels"] = detail::labels_json(labels);
  r.parameters["connected_only"] = true;
  r.parameters["exhaustive_max_rank"] = kExhaustiveAgreementRank;

  detail::FailureLog disagreements;
  for (std::size_t n = 1; n <= max_rank; ++n) {
    const bool exhaustive = n <= kExhaustiveAgreementRank;
    std::vector<CanonicalCode> codes;
    std::size_t parents = 0;
    if (exhaustive) {
      codes = enumerate_codes(n, f, jobs);
    } else {
      const auto closed = spherical_or_affine_codes(n - 1, labels, jobs);
      parents = closed.size();
      ExtensionRule rule;
      rule.connected = true;
      codes = extend_codes(closed, labels, rule, jobs);
    }
    struct Tally {
      std::size_t kinds[3] = {0, 0, 0};
      std::vector<detail::Failure> fails;
    };
    auto tallies = detail::parallel_reduce<Tally>(codes.size(), jobs, [&](Tally& t, std::size_t i) {
      const CoxeterSystem sys = decode(codes[i]);
      const TypeClass type = detail::classify_connected(sys, full_mask(n));
      const Signature sig = exact_signature(sys);
      ++t.kinds[static_cast<int>(type.kind)];
      if (!detail::engines_agree(type, sig, n)) {
        t.fails.push_back({i, "pattern: " + type.name(), "signature: " + detail::signature_text(sig)});
      }
    });
    std::size_t kinds[3] = {0, 0, 0};
    std::vector<detail::Failure> fails;
    for (auto& t : tallies) {
      for (int k = 0; k < 3; ++k) kinds[k] += t.kinds[k];
      fails.insert(fails.end(), t.fails.begin(), t.fails.end());
    }
    const std::size_t bad = fails.size();
    disagreements.add_all(std::move(fails), codes);
    Json row;
    row["rank"] = n;
    row["method"] = exhaustive ? "exhaustive" : "closure";
    if (!exhaustive) row["parents"] = parents;
    row["checked"] = codes.size();
    row["spherical"] = kinds[0];
    row["affine"] = kinds[1];
    row["indefinite"] = kinds[2];
    row["disagreements"] = bad;
    r.per_rank.push_back(row);
  }
  r.claims.push_back(
      detail::make_claim("engines_agree", disagreements, "zero disagreements"));
  if (max_rank > kExhaustiveAgreementRank) {
    detail::FailureLog tables;
    for (const auto& name : detail::table_names(max_rank)) {
      const CoxeterSystem sys = *standard_diagram(name);
      const std::size_t n = sys.rank();
      const TypeClass type = detail::classify_connected(sys, full_mask(n));
      if (type.name() != name) {
        tables.add(canonical_code(sys), "table entry " + name, "pattern: " + type.name());
        continue;
      }
      const auto nb = detail::neighbour_masks(sys);
      for (std::size_t v = 0; v < n; ++v) {
        for (Mask c : detail::component_masks(nb, full_mask(n) & ~bit(v))) {
          const TypeClass part = detail::classify_connected(sys, c);
          if (!part.is_spherical()) {
            tables.add(canonical_code(sys), name + " minus vertex " + std::to_string(v),
                       "component pattern: " + part.name());
          }
        }
      }
    }
    r.claims.push_back(detail::make_claim(
        "pattern_tables_closed_under_vertex_deletion", tables,
        "every vertex-deleted table entry has only spherical components"));
    r.details["closure_method"] =
        "ranks above " + std::to_string(kExhaustiveAgreementRank) +
        ": every connected one-vertex extension of a diagram with only spherical or affine "
        "components is checked; any other connected diagram has an indefinite component in "
        "each vertex-deleted subdiagram, so both engines call it indefinite (table closure "
        "and Gram interlacing)";
  }
  r.wall_seconds = clock.seconds();
  return r;
}

/// Connected minimal infinite classes within the filter, ranks 1..max_rank
/// (<= 8), split into affine and non-affine, with the quoted facts checked.
inline Report enumerate_minimal_infinite(const EnumFilter& filter, std::size_t max_rank,
                                         std::size_t jobs = 1) {
  detail::Stopwatch clock;
  detail::check_campaign_rank(max_rank, 8, "minimal-infinite enumeration");
  EnumFilter f = filter;
  f.connected_only = true;
  f.validate();
  const auto labels = f.effective_labels();
  Report r;
  r.campaign = "minimal-infinite";
  r.jobs = jobs;
  r.parameters["max_rank"] = max_rank;
  r.parameters["labels"] = detail::labels_json(labels);
  r.parameters["connected_only"] = true;
  r.parameters["k_spherical"] = f.k_spherical ? Json(*f.k_spherical) : Json(nullptr);

  const auto per_rank = minimal_infinite_codes(max_rank, f, jobs);
  detail::FailureLog too_big, simply_laced;
  Json non_affine = Json::array();
  Json figure = Json::array();
  for (std::size_t n = 1; n <= max_rank; ++n) {
    std::size_t affine = 0;
    for (const auto& code : per_rank[n]) {
      const CoxeterSystem sys = decode(code);
      const TypeClass type = detail::classify_connected(sys, full_mask(n));
      if (type.is_affine()) {
        ++affine;
        continue;
      }
      non_affine.push_back(detail::diagram_json(code));
      if (n > 5) too_big.add(code, "non-affine minimal infinite", "rank " + std::to_string(n));
      if (is_simply_laced(sys)) simply_laced.add(code, "non-affine minimal infinite", "simply laced");
      if (is_crystallographic(sys) && is_k_spherical(sys, 3)) figure.push_back(detail::diagram_json(code));
    }
    Json row;
    row["rank"] = n;
    row["minimal_infinite"] = per_rank[n].size();
    row["affine"] = affine;
    row["non_affine"] = per_rank[n].size() - affine;
    r.per_rank.push_back(row);
  }
  r.claims.push_back(detail::make_claim("non_affine_minimal_infinite_rank_at_most_5", too_big,
                                        "no non-affine class above rank 5"));
  r.claims.push_back(detail::make_claim("non_affine_minimal_infinite_not_simply_laced",
                                        simply_laced, "no non-affine class is simply laced"));
  // The count of 3-spherical crystallographic classes is only meaningful once
  // every crystallographic finite label is allowed and rank 5 is reached.
  const bool complete_scope =
      detail::contains_labels(labels, {Label(2), Label(3), Label(4), Label(6)}) &&
      max_rank >= 5 && !f.k_spherical && !f.simply_laced;
  if (complete_scope) {
    Claim c;
    c.name = "three_spherical_crystallographic_count";
    c.pass = figure.size() == 3;
    c.detail = std::to_string(figure.size()) + " class(es), expected 3";
    if (!c.pass) c.detail = "tool inconsistency: " + c.detail;
    for (const auto& d : figure) {
      if (c.pass || c.counterexamples.size() >= kMaxCounterexamples) break;
      c.counterexamples.push_back({d["code"], d["diagram"], "3-spherical crystallographic",
                                   "count " + std::to_string(figure.size()) + " != 3"});
    }
    r.claims.push_back(c);
  }
  r.details["non_affine"] = non_affine;
  Json tsc;
  tsc["count"] = figure.size();
  tsc["diagrams"] = figure;
  r.details["three_spherical_crystallographic"] = tsc;
  r.wall_seconds = clock.seconds();
  return r;
}

/// Connected classes that are neither spherical nor affine while every
/// proper sub-diagram is, ranks 1..max_rank (<= 11).
inline Report enumerate_quasi_minimal(const EnumFilter& filter, std::size_t max_rank,
                                      std::size_t jobs = 1) {
  detail::Stopwatch clock;
  detail::check_campaign_rank(max_rank, kMaxEnumerationRank, "quasi-minimal enumeration");
  EnumFilter f = filter;
  f.connected_only = true;
  f.validate();
  const auto labels = f.effective_labels();
  Report r;
  r.campaign = "quasi-minimal";
  r.jobs = jobs;
  r.parameters["max_rank"] = max_rank;
  r.parameters["labels"] = detail::labels_json(labels);
  r.parameters["connected_only"] = true;
  r.parameters["k_spherical"] = f.k_spherical ? Json(*f.k_spherical) : Json(nullptr);

  const auto per_rank = quasi_minimal_codes(max_rank, f, jobs);
  detail::FailureLog too_big;
  std::size_t attained = 0;
  Json classes = Json::array();
  for (std::size_t n = 1; n <= max_rank; ++n) {
    Json row;
    row["rank"] = n;
    row["quasi_minimal"] = per_rank[n].size();
    r.per_rank.push_back(row);
    if (!per_rank[n].empty()) attained = n;
    for (const auto& code : per_rank[n]) {
      classes.push_back(code_hex(code));
      if (n > 10) too_big.add(code, "quasi-minimal", "rank " + std::to_string(n));
    }
  }
  r.claims.push_back(detail::make_claim("quasi_minimal_rank_at_most_10", too_big,
                                        "no class above rank 10 up to rank " +
                                            std::to_string(max_rank)));
  r.details["max_rank_attained"] = attained;
  r.details["classes"] = classes;
  r.wall_seconds = clock.seconds();
  return r;
}

/// Size bounds: quasi-minimal classes up to `max_rank` and minimal infinite
/// classes up to min(max_rank, 8), over one label set.
inline Report verify_size_bounds(std::size_t max_rank, const std::vector<Label>& label_set,
                                 std::size_t jobs = 1) {
  detail::Stopwatch clock;
  detail::check_campaign_rank(max_rank, kMaxEnumerationRank, "size-bounds campaign");
  EnumFilter f;
  f.labels = label_set;
  f.connected_only = true;
  f.validate();
  const std::size_t mi_rank = std::min<std::size_t>(max_rank, 8);
  EnumFilter qf = f;
  qf.all_proper_parabolics_spherical_or_affine = true;
  const Report quasi = enumerate_quasi_minimal(qf, max_rank, jobs);
  const Report mi = enumerate_minimal_infinite(f, mi_rank, jobs);

  Report r;
  r.campaign = "size-bounds";
  r.jobs = jobs;
  r.parameters["max_rank"] = max_rank;
  r.parameters["labels"] = detail::labels_json(f.effective_labels());
  r.parameters["minimal_infinite_max_rank"] = mi_rank;
  for (std::size_t n = 1; n <= max_rank; ++n) {
    Json row;
    row["rank"] = n;
    row["quasi_minimal"] = quasi.per_rank[n - 1]["quasi_minimal"];
    if (n <= mi_rank) {
      row["minimal_infinite_affine"] = mi.per_rank[n - 1]["affine"];
      row["minimal_infinite_non_affine"] = mi.per_rank[n - 1]["non_affine"];
    }
    r.per_rank.push_back(row);
  }
  r.claims = quasi.claims;
  r.claims.insert(r.claims.end(), mi.claims.begin(), mi.claims.end());
  r.details["quasi_minimal"] = quasi.details;
  r.details["minimal_infinite"] = mi.details;
  r.wall_seconds = clock.seconds();
  return r;
}

}  // namespace coxeter
