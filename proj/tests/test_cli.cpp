#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "coxeter");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code =
      coxeter::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, ClassifyJson) {
  auto r = run({"classify", "--stdin", "--format", "json"}, "rank: 3\nedge: 0 1 3\nedge: 1 2 3\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, R"("components":[{"type":"spherical","name":"A3"}])")) << r.out;
}

TEST(Cli, HyperbolicJson) {
  auto r = run({"hyperbolic", "--stdin", "--format", "json"}, "type: ~A2\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, R"("verdict":"not_hyperbolic","witness":{"kind":"affine_subset",)"))
      << r.out;
  auto h = run({"hyperbolic", "--stdin", "--format", "json"}, "type: H3\n");
  EXPECT_TRUE(has(h.out, R"("verdict":"hyperbolic","witness":null)")) << h.out;
}

TEST(Cli, ParabolicsAndThreshold) {
  auto p = run({"parabolics", "--stdin", "--format", "json"}, "rank: 3\nedge: 0 1 inf\n");
  EXPECT_TRUE(has(p.out, R"("minimal_infinite":[[0,1]],"affine_parabolic":null)")) << p.out;
  auto p2 = run({"parabolics", "--stdin", "--format", "json", "--include-rank2-infinity"},
                "rank: 3\nedge: 0 1 inf\n");
  EXPECT_TRUE(has(p2.out, R"("affine_parabolic":{"vertices":[0,1],"type":"~A1"})")) << p2.out;
  auto t = run({"threshold", "--rank", "1", "--format", "json"});
  EXPECT_EQ(t.out, R"({"d":1,"bound":"1764/25","bound_decimal":"70.56","q":"71","q_proven":true})"
                   "\n");
  auto t2 = run({"threshold", "--stdin", "--format", "json"}, "type: A2\n");
  EXPECT_TRUE(has(t2.out, R"("d":2,)")) << t2.out;
  EXPECT_EQ(run({"threshold", "--stdin"}, "rank: 0\n").code, 2);
}

TEST(Cli, VerifySizeBoundsExitsZero) {
  auto r = run({"verify", "--campaign", "size-bounds", "--labels", "2,3", "--max-rank", "11"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(has(r.out, "[pass] quasi_minimal_rank_at_most_10"));
}

TEST(Cli, VerifyJsonIsStableAcrossJobs) {
  auto strip_meta = [](const std::string& s) { return s.substr(0, s.find(R"(,"meta":)")); };
  auto a = run({"verify", "--campaign", "lemma-dynkin", "--mode", "simply-laced", "--max-rank",
                "6", "--format", "json", "--jobs", "1"});
  auto b = run({"verify", "--campaign", "lemma-dynkin", "--mode", "simply-laced", "--max-rank",
                "6", "--format", "json", "--jobs", "3", "--seedless"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(strip_meta(a.out), strip_meta(b.out));
  EXPECT_TRUE(has(a.out, R"("meta":{"wall_seconds":)"));
}

TEST(Cli, Enumerate) {
  auto r = run({"enumerate", "--max-rank", "4", "--labels", "2,3", "--connected", "--format",
                "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, R"({"rank":4,"classes":6})")) << r.out;
  auto q = run({"enumerate", "--mode", "quasi-minimal", "--max-rank", "5", "--labels", "2,3",
                "--all-proper-spherical-or-affine"});
  EXPECT_EQ(q.code, 0) << q.err;
  auto m = run({"enumerate", "--mode", "minimal-infinite", "--max-rank", "5", "--labels",
                "2,3,4,6", "--format", "json"});
  EXPECT_EQ(m.code, 0) << m.err;
  EXPECT_TRUE(has(m.out, R"("campaign":"minimal-infinite")"));
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"classify", "--stdin"}, "rank: 2\nedge: 0 1 2\n").code, 2);
  auto e = run({"classify", "--stdin"}, "rank: 2\nedge: 0 1 2\n");
  EXPECT_TRUE(has(e.err, "line 2, column 11")) << e.err;
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "--stdin", "--input", "x.txt"}, "rank: 1\n").code, 2);
  EXPECT_EQ(run({"classify", "--input", "/nonexistent/diagram.txt"}).code, 2);
  EXPECT_EQ(run({"classify", "--stdin", "--format", "xml"}, "rank: 1\n").code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--campaign", "size-bounds", "--max-rank", "12"}).code, 2);
  EXPECT_EQ(run({"verify", "--campaign", "lemma-dynkin", "--max-rank", "3"}).code, 2);
  EXPECT_EQ(run({"verify", "--campaign", "engine-agreement", "--labels", "2,5", "--max-rank", "3"})
                .code,
            2);
  EXPECT_EQ(run({"enumerate", "--max-rank", "3", "--labels", "3"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--labels", "2,3"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TextOutput) {
  auto r = run({"classify", "--stdin"}, "rank: 5\nedge: 0 1 3\nedge: 1 2 4\n");
  EXPECT_EQ(r.out, "rank 5, 3 component(s)\n  B3 (spherical) on {0,1,2}, also C3\n"
                   "  A1 (spherical) on {3}\n  A1 (spherical) on {4}\n");
  auto h = run({"hyperbolic", "--stdin"}, "rank: 4\nedge: 0 1 inf\nedge: 2 3 inf\n");
  EXPECT_EQ(h.out, "not hyperbolic: commuting infinite special subgroups on {0,1} and {2,3}\n");
}
