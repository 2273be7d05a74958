// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <gmpxx.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli_app.hpp"
#include "coxeter/coxeter.hpp"

using namespace coxeter;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::size_t rank_count(const Report& r, std::size_t rank, const char* key) {
  return r.per_rank.at(rank - 1).at(key).get<std::size_t>();
}

// ---- criterion 1 oracle: unlabelled graph counts by Burnside over S_n ----

/// Number of isomorphism classes of simple graphs on n vertices: the average,
/// over all n! vertex permutations, of 2^(number of edge orbits).
mpz_class graph_count(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  mpz_class total = 0;
  mpz_class perms = 0;
  do {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    std::size_t orbits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (seen[{i, j}]) continue;
        ++orbits;
        std::size_t a = i, b = j;
        while (!seen[{std::min(a, b), std::max(a, b)}]) {
          seen[{std::min(a, b), std::max(a, b)}] = true;
          a = p[a];
          b = p[b];
        }
      }
    }
    total += mpz_class(1) << orbits;
    ++perms;
  } while (std::next_permutation(p.begin(), p.end()));
  return total / perms;
}

/// Connected counts from all-graph counts by the inverse Euler transform.
std::vector<mpz_class> connected_counts(const std::vector<mpz_class>& g) {
  const std::size_t n = g.size() - 1;
  std::vector<mpz_class> c(n + 1, 0), b(n + 1, 0);
  // g is the Euler transform of c: n g_n = sum_{k=1}^{n} b_k g_{n-k},
  // with b_k = sum_{d | k} d c_d.
  for (std::size_t m = 1; m <= n; ++m) {
    mpz_class s = m * g[m];
    for (std::size_t k = 1; k < m; ++k) s -= b[k] * g[m - k];
    b[m] = s;
    mpz_class rest = b[m];
    for (std::size_t d = 1; d < m; ++d)
      if (m % d == 0) rest -= d * c[d];
    c[m] = rest / m;
  }
  return c;
}

Outcome criterion1() {
  Outcome o;
  std::vector<mpz_class> g(8);
  g[0] = 1;
  for (std::size_t n = 1; n <= 7; ++n) g[n] = graph_count(n);
  const auto c = connected_counts(g);
  const auto sl = verify_lemma_dynkin(LemmaMode::simply_laced, 7, jobs());
  o.require(c[7] == 853, "Burnside count of connected graphs on 7 vertices is 853");
  for (std::size_t n = 1; n <= 7; ++n) {
    o.require(rank_count(sl, n, "classes") == c[n].get_ui(),
              "rank " + std::to_string(n) + " class count matches Burnside");
  }
  const auto tsc = verify_lemma_dynkin(LemmaMode::three_spherical_crystallographic, 6, jobs());
  for (const auto* r : {&sl, &tsc}) {
    std::size_t bad = 0, classes = 0;
    for (const auto& row : r->per_rank) {
      bad += row["inconsistencies"].get<std::size_t>();
      classes += row["classes"].get<std::size_t>();
    }
    o.require(r->all_pass() && bad == 0,
              r->parameters["mode"].get<std::string>() + ": zero inconsistencies");
    o.note(r->parameters["mode"].get<std::string>() + ": " + std::to_string(classes) +
           " classes, " + std::to_string(bad) + " inconsistencies, " +
           std::to_string(r->wall_seconds) + " s");
  }
  o.note("connected graphs on 7 vertices: enumerated " +
         std::to_string(rank_count(sl, 7, "classes")) + ", Burnside " + c[7].get_str());
  return o;
}

// ---- criterion 2 ----

/// Independent membership test: connected, Gram form indefinite, and every
/// component of every proper sub-diagram has a positive semidefinite form.
bool quasi_minimal_by_signature(const CoxeterSystem& sys) {
  const std::size_t n = sys.rank();
  if (!is_irreducible(sys)) return false;
  if (exact_signature(sys).negative == 0) return false;
  const auto nb = detail::neighbour_masks(sys);
  for (Mask m = 1; m < full_mask(n); ++m) {
    for (Mask comp : detail::component_masks(nb, m)) {
      if (exact_signature(restrict_to(sys, comp)).negative != 0) return false;
    }
  }
  return true;
}

Outcome criterion2() {
  Outcome o;
  const CoxeterSystem e10 = [] {
    // The tree with arms of 1, 2 and 6 edges from one branch vertex.
    CoxeterSystem s(10);
    const std::size_t arms[3] = {1, 2, 6};
    std::size_t next = 1;
    for (std::size_t a : arms) {
      std::size_t prev = 0;
      for (std::size_t k = 0; k < a; ++k, ++next) {
        s.set_label(prev, next, Label(3));
        prev = next;
      }
    }
    return s;
  }();
  o.require(quasi_minimal_by_signature(e10), "overextended E8 passes the direct membership test");
  const auto e10_code = canonical_code(e10);
  for (const auto& labels : {std::vector<Label>{Label(2), Label(3)},
                             std::vector<Label>{Label(2), Label(3), Label(4)}}) {
    EnumFilter f;
    f.labels = labels;
    f.connected_only = true;
    f.all_proper_parabolics_spherical_or_affine = true;
    const auto r = enumerate_quasi_minimal(f, 11, jobs());
    const std::string name = labels.size() == 2 ? "{2,3}" : "{2,3,4}";
    o.require(rank_count(r, 11, "quasi_minimal") == 0, name + ": zero classes at rank 11");
    o.require(rank_count(r, 10, "quasi_minimal") >= 1, name + ": a class at rank 10");
    const auto codes = quasi_minimal_codes(11, f, jobs());
    o.require(std::find(codes[10].begin(), codes[10].end(), e10_code) != codes[10].end(),
              name + ": overextended E8 among the rank-10 classes");
    bool members_ok = true;
    for (const auto& c : codes[10]) members_ok = members_ok && quasi_minimal_by_signature(decode(c));
    o.require(members_ok, name + ": every rank-10 class passes the direct membership test");
    std::string counts;
    for (std::size_t n = 1; n <= 11; ++n)
      counts += (n > 1 ? "," : "") + std::to_string(rank_count(r, n, "quasi_minimal"));
    o.note(name + " per-rank counts 1..11: " + counts + " (" + std::to_string(r.wall_seconds) +
           " s)");
  }
  return o;
}

// ---- criterion 3 ----

Outcome criterion3() {
  Outcome o;
  EnumFilter wide;
  wide.labels = {Label(2), Label(3), Label(4), Label(5), Label(6), kInfinity};
  const auto r = enumerate_minimal_infinite(wide, 6, jobs());
  o.require(r.claim("non_affine_minimal_infinite_rank_at_most_5")->pass,
            "every non-affine minimal infinite class has rank <= 5");
  o.require(rank_count(r, 6, "non_affine") == 0, "no non-affine class at rank 6");
  EnumFilter sl;
  sl.labels = {Label(2), Label(3)};
  const auto s = enumerate_minimal_infinite(sl, 6, jobs());
  std::size_t sl_non_affine = 0;
  for (std::size_t n = 1; n <= 6; ++n) sl_non_affine += rank_count(s, n, "non_affine");
  o.require(sl_non_affine == 0, "labels {2,3}: no non-affine minimal infinite class");
  o.require(r.claim("non_affine_minimal_infinite_not_simply_laced")->pass,
            "no non-affine class is simply laced");
  const auto& tsc = r.details["three_spherical_crystallographic"];
  o.require(tsc["count"] == 3, "exactly 3 non-affine 3-spherical crystallographic classes");
  for (const auto& d : tsc["diagrams"]) {
    std::string text = d["diagram"].get<std::string>();
    std::replace(text.begin(), text.end(), '\n', ';');
    o.note("3-spherical crystallographic: " + text);
  }
  return o;
}

// ---- criterion 4 ----

Outcome criterion4() {
  Outcome o;
  const auto r =
      verify_engine_agreement(8, {Label(2), Label(3), Label(4), Label(6)}, jobs());
  std::size_t bad = 0;
  for (const auto& row : r.per_rank) {
    bad += row["disagreements"].get<std::size_t>();
    o.note("rank " + row["rank"].dump() + " (" + row["method"].get<std::string>() +
           "): " + row["checked"].dump() + " checked, " + row["disagreements"].dump() +
           " disagreements");
  }
  o.require(r.all_pass() && bad == 0, "zero disagreements through rank 8");
  o.note("wall time " + std::to_string(r.wall_seconds) + " s");
  return o;
}

// ---- criterion 5 ----

struct WitnessStats {
  std::size_t verdicts = 0, witnesses = 0, invalid = 0;
  std::size_t instances = 0, non_affine_results = 0, fallback = 0, in_hypotheses = 0;
  std::map<std::string, std::size_t> cases;
};

void check_verdict(const CoxeterSystem& sys, WitnessStats& st) {
  ++st.verdicts;
  const auto v = is_hyperbolic(sys);
  if (!v.hyperbolic) {
    ++st.witnesses;
    if (!v.witness || !validate_witness(sys, *v.witness)) ++st.invalid;
  }
}

void check_commuting_pairs(const CoxeterSystem& sys, WitnessStats& st) {
  const auto mins = minimal_infinite_subsets(sys);
  for (std::size_t a = 0; a < mins.size(); ++a) {
    for (std::size_t b = 0; b < mins.size(); ++b) {
      if (a == b) continue;
      const Mask x = mins[a].bits(), y = mins[b].bits();
      if ((x & y) != 0 || !detail::commute(sys, x, y)) continue;
      const auto res = affine_from_commuting(sys, mins[a], mins[b]);
      ++st.instances;
      ++st.in_hypotheses;
      const auto sub = restrict(sys, res.subset);
      const bool affine = is_irreducible(sub) && classify_irreducible(sub).is_affine() &&
                          exact_signature(sub) == Signature{sub.rank() - 1, 1, 0};
      if (!affine) ++st.non_affine_results;
      if (res.fallback_used) ++st.fallback;
      ++st.cases[path_case_name(res.path_case)];
    }
  }
}

bool in_lemma_class(const CoxeterSystem& s) {
  return is_irreducible(s) && is_crystallographic(s) &&
         (is_simply_laced(s) || is_k_spherical(s, 3));
}

Outcome criterion5() {
  Outcome o;
  WitnessStats st;
  // Every connected diagram of rank <= 5 over {2,3,4,6,inf}: hyperbolicity witnesses.
  EnumFilter all;
  all.labels = {Label(2), Label(3), Label(4), Label(6), kInfinity};
  all.connected_only = true;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& c : enumerate_codes(n, all, jobs())) check_verdict(decode(c), st);
  // Disconnected ones too, up to rank 4 with non-crystallographic labels.
  EnumFilter mixed;
  mixed.labels = {Label(2), Label(3), Label(5), Label(7), kInfinity};
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& c : enumerate_codes(n, mixed, jobs())) check_verdict(decode(c), st);
  // The lemma classes: witnesses and every commuting minimal infinite pair.
  EnumFilter sl;
  sl.labels = {Label(2), Label(3)};
  sl.connected_only = true;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const auto& c : enumerate_codes(n, sl, jobs())) {
      const auto sys = decode(c);
      check_verdict(sys, st);
      check_commuting_pairs(sys, st);
    }
  }
  EnumFilter tsc;
  tsc.labels = {Label(2), Label(3), Label(4), Label(6)};
  tsc.connected_only = true;
  tsc.k_spherical = 3;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& c : enumerate_codes(n, tsc, jobs())) {
      const auto sys = decode(c);
      check_verdict(sys, st);
      check_commuting_pairs(sys, st);
    }
  }
  // Two non-affine 3-spherical minimal infinite diagrams joined through a
  // path of one or two new vertices, kept when the result is 3-spherical.
  EnumFilter fig;
  fig.labels = {Label(2), Label(3), Label(4), Label(6)};
  const auto mi = enumerate_minimal_infinite(fig, 5, 1);
  std::vector<CoxeterSystem> shapes;
  for (const auto& d : mi.details["three_spherical_crystallographic"]["diagrams"])
    shapes.push_back(parse_diagram(d["diagram"].get<std::string>()));
  std::size_t constructed = 0;
  for (const auto& p : shapes) {
    for (const auto& q : shapes) {
      for (std::size_t len = 1; len <= 2; ++len) {
        for (std::size_t a = 0; a < p.rank(); ++a) {
          for (std::size_t b = 0; b < q.rank(); ++b) {
            for (Label link : {Label(3), Label(4)}) {
              CoxeterSystem s = direct_sum(p, q);
              CoxeterSystem t(s.rank() + len);
              for (std::size_t i = 0; i < s.rank(); ++i)
                for (std::size_t j = i + 1; j < s.rank(); ++j) t.set_label(i, j, s.label(i, j));
              const std::size_t first = s.rank();
              t.set_label(a, first, link);
              for (std::size_t k = 1; k < len; ++k) t.set_label(first + k - 1, first + k, Label(3));
              t.set_label(first + len - 1, p.rank() + b, Label(3));
              if (!in_lemma_class(t)) continue;
              ++constructed;
              check_verdict(t, st);
              check_commuting_pairs(t, st);
            }
          }
        }
      }
    }
  }
  o.require(st.invalid == 0, "every not-hyperbolic witness re-validates");
  o.require(st.non_affine_results == 0, "every affine_from_commuting result is affine");
  o.require(st.instances > 0 && constructed > 0, "instances were generated");
  o.note(std::to_string(st.verdicts) + " verdicts, " + std::to_string(st.witnesses) +
         " witnesses, " + std::to_string(st.invalid) + " invalid");
  std::string cases;
  for (const auto& [k, v] : st.cases) cases += " " + k + "=" + std::to_string(v);
  o.note(std::to_string(st.instances) + " commuting pairs (" + std::to_string(constructed) +
         " constructed diagrams), cases:" + cases);
  o.note("fallback used on " + std::to_string(st.fallback) + " of " +
         std::to_string(st.in_hypotheses) + " instances in the hypothesis class (logged only)");
  return o;
}

// ---- criterion 6 ----

bool gmp_prime_power(const mpz_class& n) {
  if (n < 2) return false;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = 1; k <= bits; ++k) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0 && mpz_probab_prime_p(r.get_mpz_t(), 40) > 0)
      return true;
    if (r < 2) break;
  }
  return false;
}

Outcome criterion6() {
  Outcome o;
  for (std::size_t d = 1; d <= 10; ++d) {
    const auto t = kazhdan_threshold_for_rank(d);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 1764, d);
    const mpq_class bound(power, 25);
    const bool bound_ok = numerator(t.bound).str() == bound.get_num().get_str() &&
                          denominator(t.bound).str() == bound.get_den().get_str();
    o.require(bound_ok, "d=" + std::to_string(d) + ": 1764^d/25 matches GMP");
    mpz_class q = power / 25 + 1;
    while (!gmp_prime_power(q)) ++q;
    o.require(t.q.str() == q.get_str(), "d=" + std::to_string(d) + ": prime power matches scan");
    if (d <= 2) o.note("d=" + std::to_string(d) + ": bound " + t.bound_decimal + ", q " + t.q.str());
  }
  return o;
}

// ---- criterion 7 ----

std::string canonical_section(const std::string& json_line) {
  auto j = Json::parse(json_line);
  j.erase("meta");
  return j.dump();
}

Outcome criterion7() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--campaign", "lemma-dynkin", "--mode", "simply-laced", "--max-rank", "7"},
      {"verify", "--campaign", "lemma-dynkin", "--mode", "three-spherical", "--max-rank", "6"},
      {"verify", "--campaign", "size-bounds", "--labels", "2,3,4", "--max-rank", "11"},
      {"verify", "--campaign", "size-bounds", "--labels", "2,3,4,5,6,inf", "--max-rank", "6"},
      {"verify", "--campaign", "engine-agreement", "--labels", "2,3,4,6", "--max-rank", "5"}};
  for (const auto& base : commands) {
    std::vector<std::string> sections;
    for (const char* jobs_flag : {"1", "8"}) {
      for (int run = 0; run < 3; ++run) {
        std::vector<std::string> args{"coxeter"};
        args.insert(args.end(), base.begin(), base.end());
        args.insert(args.end(), {"--format", "json", "--jobs", jobs_flag});
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::istringstream in;
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
        o.require(code == 0, base[2] + " exits 0");
        sections.push_back(canonical_section(out.str()));
      }
    }
    const bool same = std::all_of(sections.begin(), sections.end(),
                                  [&](const std::string& s) { return s == sections[0]; });
    o.require(same, base[2] + " " + base[4] + ": identical canonical sections");
    o.note(base[2] + " " + base[4] + " " + base[6] + ": 6 runs, content_hash " +
           Json::parse(sections[0]).at("content_hash").get<std::string>());
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 lemma exhaustive check (simply laced <= 7, 3-spherical crystallographic <= 6)", criterion1},
      {"2 size bound: quasi-minimal classes stop at rank 10", criterion2},
      {"3 minimal infinite facts", criterion3},
      {"4 engine agreement through rank 8 over {2,3,4,6}", criterion4},
      {"5 witness soundness", criterion5},
      {"6 threshold formula and prime-power selection", criterion6},
      {"7 determinism across runs and --jobs 1/8", criterion7},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << name << "\n";
    for (const auto& n : o.notes) std::cout << "         " << n << "\n";
    std::cout << std::flush;
  }
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
