#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coxeter/coxeter.hpp"

namespace coxeter::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailed = 1;
inline constexpr int kExitInputError = 2;

struct DiagramSource {
  std::string input;
  bool from_stdin = false;
};

struct Options {
  DiagramSource source;
  std::string format = "text";
  std::size_t max_rank = 0;
  std::string labels = "2,3";
  std::string mode;
  std::string campaign;
  std::size_t jobs = 1;
  bool seedless = false;
  // enumerate
  bool connected = false;
  bool simply_laced = false;
  bool crystallographic = false;
  std::size_t k_spherical = 0;
  bool all_proper_sa = false;
  bool list = false;
  // parabolics
  bool rank2_infinity = false;
  // threshold
  std::size_t rank_d = 0;
};

inline CoxeterSystem read_diagram(const DiagramSource& src, std::istream& in) {
  if (src.from_stdin == !src.input.empty()) {
    throw InputError("give exactly one of --input <file> or --stdin");
  }
  std::string text;
  if (src.from_stdin) {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(src.input, std::ios::binary);
    if (!file) throw InputError("cannot read " + src.input);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  return parse_diagram(text);
}

inline Json subset_json(const VertexSubset& s) {
  Json j = Json::array();
  for (std::size_t i : s.indices()) j.push_back(i);
  return j;
}

inline std::string subset_string(const VertexSubset& s) {
  std::string out = "{";
  for (std::size_t i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

inline Json classify_json(const CoxeterSystem& sys) {
  const auto parts = classify(sys);
  Json j;
  j["components"] = Json::array();
  Json vertices = Json::array();
  bool spherical = true;
  for (const auto& c : parts) {
    Json comp;
    comp["type"] = kind_name(c.type.kind);
    comp["name"] = c.type.name();
    j["components"].push_back(comp);
    vertices.push_back(subset_json(c.vertices));
    spherical = spherical && c.type.is_spherical();
  }
  j["component_vertices"] = vertices;
  j["rank"] = sys.rank();
  j["spherical"] = spherical;
  return j;
}

inline std::string classify_text(const CoxeterSystem& sys) {
  std::ostringstream out;
  const auto parts = classify(sys);
  out << "rank " << sys.rank() << ", " << parts.size() << " component(s)\n";
  for (const auto& c : parts) {
    out << "  " << c.type.name() << " (" << kind_name(c.type.kind) << ") on "
        << subset_string(c.vertices);
    const auto aliases = c.type.aliases();
    if (!aliases.empty()) {
      out << ", also";
      for (const auto& a : aliases) out << " " << a;
    }
    out << "\n";
  }
  return out.str();
}

inline const char* witness_kind_name(WitnessKind k) {
  return k == WitnessKind::affine_subset ? "affine_subset" : "commuting_infinite_pair";
}

inline Json hyperbolic_json(const HyperbolicityVerdict& v) {
  Json j;
  j["verdict"] = v.hyperbolic ? "hyperbolic" : "not_hyperbolic";
  if (!v.witness) {
    j["witness"] = nullptr;
    return j;
  }
  Json w;
  w["kind"] = witness_kind_name(v.witness->kind);
  w["first"] = subset_json(v.witness->first);
  w["second"] = subset_json(v.witness->second);
  w["type"] = v.witness->kind == WitnessKind::affine_subset ? Json(v.witness->type.name())
                                                            : Json(nullptr);
  j["witness"] = w;
  return j;
}

inline std::string hyperbolic_text(const HyperbolicityVerdict& v) {
  if (v.hyperbolic) return "hyperbolic\n";
  const auto& w = *v.witness;
  if (w.kind == WitnessKind::affine_subset) {
    return "not hyperbolic: affine special subgroup " + w.type.name() + " on " +
           subset_string(w.first) + "\n";
  }
  return "not hyperbolic: commuting infinite special subgroups on " + subset_string(w.first) +
         " and " + subset_string(w.second) + "\n";
}

inline Json parabolics_json(const CoxeterSystem& sys, bool rank2_infinity) {
  Json j;
  j["rank"] = sys.rank();
  j["max_spherical_rank"] = max_spherical_rank(sys);
  j["minimal_infinite"] = Json::array();
  for (const auto& s : minimal_infinite_subsets(sys)) j["minimal_infinite"].push_back(subset_json(s));
  const auto affine = has_affine_parabolic(sys, rank2_infinity);
  if (affine) {
    Json a;
    a["vertices"] = subset_json(*affine);
    a["type"] = classify_irreducible(restrict(sys, *affine)).name();
    j["affine_parabolic"] = a;
  } else {
    j["affine_parabolic"] = nullptr;
  }
  return j;
}

inline std::string parabolics_text(const Json& j) {
  std::ostringstream out;
  out << "max spherical rank: " << j["max_spherical_rank"].get<std::size_t>() << "\n";
  out << "minimal infinite subsets:";
  if (j["minimal_infinite"].empty()) out << " none";
  for (const auto& s : j["minimal_infinite"]) {
    out << " {";
    for (std::size_t k = 0; k < s.size(); ++k) out << (k ? "," : "") << s[k].get<std::size_t>();
    out << "}";
  }
  out << "\naffine special subgroup: ";
  if (j["affine_parabolic"].is_null()) {
    out << "none\n";
  } else {
    out << j["affine_parabolic"]["type"].get<std::string>() << " on {";
    const auto& v = j["affine_parabolic"]["vertices"];
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k].get<std::size_t>();
    out << "}\n";
  }
  return out.str();
}

inline Json threshold_json(const KazhdanThreshold& t) {
  Json j;
  j["d"] = t.d;
  j["bound"] = t.bound.str();
  j["bound_decimal"] = t.bound_decimal;
  j["q"] = t.q.str();
  j["q_proven"] = t.q_proven;
  return j;
}

inline std::string threshold_text(const KazhdanThreshold& t) {
  return "d = " + std::to_string(t.d) + "\nbound 1764^d/25 = " + t.bound_decimal +
         "\nsmallest prime power q >= bound: " + t.q.str() +
         (t.q_proven ? "" : " (probable prime power)") + "\n";
}

inline std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "campaign " << r.campaign << ": " << (r.all_pass() ? "pass" : "FAIL") << "\n";
  for (const auto& row : r.per_rank) {
    out << " ";
    for (auto it = row.begin(); it != row.end(); ++it) {
      out << " " << it.key() << "=";
      if (it.value().is_string()) {
        out << it.value().get<std::string>();
      } else {
        out << it.value().dump();
      }
    }
    out << "\n";
  }
  for (const auto& c : r.claims) {
    out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
    for (const auto& x : c.counterexamples) {
      out << "    counterexample " << x.code_hex << ": " << x.first_verdict << " vs "
          << x.second_verdict << "\n";
    }
  }
  out << "  wall time " << r.wall_seconds << " s, jobs " << r.jobs << "\n";
  return out.str();
}

inline EnumFilter filter_from(const Options& o) {
  EnumFilter f;
  f.labels = parse_label_list(o.labels);
  f.connected_only = o.connected;
  f.simply_laced = o.simply_laced;
  f.crystallographic = o.crystallographic;
  if (o.k_spherical > 0) f.k_spherical = o.k_spherical;
  f.all_proper_parabolics_spherical_or_affine = o.all_proper_sa;
  f.validate();
  return f;
}

inline void require_max_rank(const Options& o) {
  if (o.max_rank == 0) throw InputError("--max-rank <n> is required (n >= 1)");
}

inline Json enumerate_json(const Options& o, const EnumFilter& f) {
  Json j;
  j["command"] = "enumerate";
  j["mode"] = "diagrams";
  Json p;
  p["max_rank"] = o.max_rank;
  p["labels"] = detail::labels_json(f.effective_labels());
  p["connected_only"] = f.connected_only;
  p["k_spherical"] = f.k_spherical ? Json(*f.k_spherical) : Json(nullptr);
  p["all_proper_parabolics_spherical_or_affine"] = f.all_proper_parabolics_spherical_or_affine;
  j["parameters"] = p;
  j["per_rank"] = Json::array();
  std::vector<CanonicalCode> top;
  for (std::size_t n = 1; n <= o.max_rank; ++n) {
    auto codes = enumerate_codes(n, f, o.jobs);
    Json row;
    row["rank"] = n;
    row["classes"] = codes.size();
    j["per_rank"].push_back(row);
    if (n == o.max_rank) top = std::move(codes);
  }
  if (o.list) {
    j["diagrams"] = Json::array();
    for (const auto& c : top) j["diagrams"].push_back(detail::diagram_json(c));
  }
  return j;
}

inline std::string enumerate_text(const Json& j) {
  std::ostringstream out;
  for (const auto& row : j["per_rank"]) {
    out << "rank " << row["rank"].get<std::size_t>() << ": " << row["classes"].get<std::size_t>()
        << " class(es)\n";
  }
  if (j.contains("diagrams")) {
    for (const auto& d : j["diagrams"]) {
      out << "# " << d["code"].get<std::string>() << "\n" << d["diagram"].get<std::string>();
    }
  }
  return out.str();
}

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Coxeter diagram analysis: classification, hyperbolicity, enumeration"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", o.source.input, "Diagram file");
    sub->add_flag("--stdin", o.source.from_stdin, "Read the diagram from standard input");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--seedless", o.seedless, "Accepted for compatibility; nothing is random");
  };
  auto add_enum = [&](CLI::App* sub) {
    sub->add_option("--max-rank", o.max_rank, "Largest rank");
    sub->add_option("--labels", o.labels, "Comma-separated labels, e.g. 2,3,4,inf");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify the components of a diagram");
  add_io(classify_cmd);
  auto* hyperbolic_cmd = app.add_subcommand("hyperbolic", "Decide Gromov hyperbolicity");
  add_io(hyperbolic_cmd);
  auto* parabolics_cmd =
      app.add_subcommand("parabolics", "Minimal infinite and affine special subgroups");
  add_io(parabolics_cmd);
  parabolics_cmd->add_flag("--include-rank2-infinity", o.rank2_infinity,
                           "Count an infinity edge as an affine special subgroup");
  auto* threshold_cmd = app.add_subcommand("threshold", "Field-size threshold 1764^d/25");
  add_io(threshold_cmd);
  threshold_cmd->add_option("--rank", o.rank_d, "Use this d instead of reading a diagram");
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate diagrams up to isomorphism");
  add_io(enumerate_cmd);
  add_enum(enumerate_cmd);
  enumerate_cmd->add_option("--mode", o.mode, "diagrams, minimal-infinite or quasi-minimal")
      ->check(CLI::IsMember({"diagrams", "minimal-infinite", "quasi-minimal"}));
  enumerate_cmd->add_flag("--connected", o.connected, "Connected diagrams only");
  enumerate_cmd->add_flag("--simply-laced", o.simply_laced, "Labels 2 and 3 only");
  enumerate_cmd->add_flag("--crystallographic", o.crystallographic, "Labels 2,3,4,6,inf only");
  enumerate_cmd->add_option("--k-spherical", o.k_spherical, "Every k-subset spherical");
  enumerate_cmd->add_flag("--all-proper-spherical-or-affine", o.all_proper_sa,
                          "Every proper sub-diagram spherical or affine");
  enumerate_cmd->add_flag("--list", o.list, "List the diagrams of the largest rank");
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification campaign");
  add_io(verify_cmd);
  add_enum(verify_cmd);
  verify_cmd->add_option("--campaign", o.campaign, "Campaign")
      ->required()
      ->check(CLI::IsMember({"lemma-dynkin", "engine-agreement", "size-bounds"}));
  verify_cmd->add_option("--mode", o.mode, "simply-laced or three-spherical (lemma-dynkin)")
      ->check(CLI::IsMember({"simply-laced", "three-spherical"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const bool json = o.format == "json";
  auto emit = [&](const Json& j, const std::string& text) {
    if (json) {
      out << j.dump() << "\n";
    } else {
      out << text;
    }
  };

  try {
    if (*classify_cmd) {
      const auto sys = read_diagram(o.source, in);
      emit(classify_json(sys), classify_text(sys));
    } else if (*hyperbolic_cmd) {
      const auto v = is_hyperbolic(read_diagram(o.source, in));
      emit(hyperbolic_json(v), hyperbolic_text(v));
    } else if (*parabolics_cmd) {
      const auto j = parabolics_json(read_diagram(o.source, in), o.rank2_infinity);
      emit(j, parabolics_text(j));
    } else if (*threshold_cmd) {
      const auto t = o.rank_d > 0 ? kazhdan_threshold_for_rank(o.rank_d)
                                  : kazhdan_threshold(read_diagram(o.source, in));
      emit(threshold_json(t), threshold_text(t));
    } else if (*enumerate_cmd) {
      require_max_rank(o);
      const EnumFilter f = filter_from(o);
      if (o.mode.empty() || o.mode == "diagrams") {
        const auto j = enumerate_json(o, f);
        emit(j, enumerate_text(j));
      } else {
        const Report r = o.mode == "minimal-infinite"
                             ? enumerate_minimal_infinite(f, o.max_rank, o.jobs)
                             : enumerate_quasi_minimal(f, o.max_rank, o.jobs);
        emit(to_json(r), report_text(r));
        return r.all_pass() ? kExitOk : kExitClaimFailed;
      }
    } else if (*verify_cmd) {
      require_max_rank(o);
      Report r;
      if (o.campaign == "lemma-dynkin") {
        if (o.mode.empty()) throw InputError("lemma-dynkin needs --mode");
        r = verify_lemma_dynkin(
            o.mode == "simply-laced" ? LemmaMode::simply_laced
                                     : LemmaMode::three_spherical_crystallographic,
            o.max_rank, o.jobs);
      } else if (o.campaign == "engine-agreement") {
        r = verify_engine_agreement(o.max_rank, parse_label_list(o.labels), o.jobs);
      } else {
        r = verify_size_bounds(o.max_rank, parse_label_list(o.labels), o.jobs);
      }
      emit(to_json(r), report_text(r));
      return r.all_pass() ? kExitOk : kExitClaimFailed;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace coxeter::cli
