#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "coxeter/version.hpp"

namespace coxeter {

using Json = nlohmann::ordered_json;

/// A diagram on which two verdicts disagree, in a form that can be replayed.
struct Counterexample {
  std::string code_hex;
  /// Diagram text accepted by parse_diagram.
  std::string diagram;
  std::string first_verdict;
  std::string second_verdict;
};

struct Claim {
  std::string name;
  bool pass = true;
  std::string detail;
  std::vector<Counterexample> counterexamples;
};

/// Outcome of a campaign. Everything except `wall_seconds` and `jobs` is a
/// function of (campaign, parameters) and forms the canonical section.
struct Report {
  std::string campaign;
  Json parameters = Json::object();
  /// One object per rank, each starting with a "rank" key.
  Json per_rank = Json::array();
  std::vector<Claim> claims;
  Json details = Json::object();
  double wall_seconds = 0.0;
  std::size_t jobs = 1;

  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }

  const Claim* claim(std::string_view name) const {
    for (const auto& c : claims)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Counterexamples kept per claim; the detail line carries the full count.
inline constexpr std::size_t kMaxCounterexamples = 20;

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline Json to_json(const Counterexample& c) {
  Json j;
  j["code"] = c.code_hex;
  j["diagram"] = c.diagram;
  j["first_verdict"] = c.first_verdict;
  j["second_verdict"] = c.second_verdict;
  return j;
}

inline Json to_json(const Claim& c) {
  Json j;
  j["name"] = c.name;
  j["verdict"] = c.pass ? "pass" : "fail";
  j["detail"] = c.detail;
  j["counterexamples"] = Json::array();
  for (const auto& x : c.counterexamples) j["counterexamples"].push_back(to_json(x));
  return j;
}

/// The canonical section: deterministic, no timing.
inline Json canonical_json(const Report& r) {
  Json j;
  j["campaign"] = r.campaign;
  j["tool_version"] = kToolVersion;
  j["parameters"] = r.parameters;
  j["verdict"] = r.all_pass() ? "pass" : "fail";
  j["per_rank"] = r.per_rank;
  j["claims"] = Json::array();
  for (const auto& c : r.claims) j["claims"].push_back(to_json(c));
  j["details"] = r.details;
  return j;
}

/// Full report object: the canonical section, its hashes, then `meta`.
///
/// `input_hash` covers campaign, tool version and parameters; `content_hash`
/// covers the whole canonical section. Both are FNV-1a 64 of compact dumps.
inline Json to_json(const Report& r) {
  Json j = canonical_json(r);
  Json inputs;
  inputs["campaign"] = r.campaign;
  inputs["tool_version"] = kToolVersion;
  inputs["parameters"] = r.parameters;
  const std::string body = j.dump();
  j["input_hash"] = hex64(fnv1a64(inputs.dump()));
  j["content_hash"] = hex64(fnv1a64(body));
  Json meta;
  meta["wall_seconds"] = r.wall_seconds;
  meta["jobs"] = r.jobs;
  j["meta"] = meta;
  return j;
}

}  // namespace coxeter
