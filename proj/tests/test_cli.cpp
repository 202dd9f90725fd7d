#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

#include "cli.hpp"

using nangle::Json;
using nangle::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args, const char* env = nullptr) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err, env);
  return Run{code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return std::string(NANGLE_FIXTURE_DIR) + "/" + name + ".json"; }

}  // namespace

TEST(Cli, AlgebraReport) {
  auto r = run({"algebra", fx("nakayama_2_2")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["schema"], "1");
  EXPECT_EQ(j["algebra"]["dim"], 4);
  EXPECT_EQ(j["nakayama_permutation"], Json::array({1, 0}));
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, NonSelfInjectiveExitsOne) {
  auto r = run({"algebra", fx("a2_hereditary")});
  EXPECT_EQ(r.code, 1);
  auto j = r.json();
  EXPECT_EQ(j["self_injective"], false);
  EXPECT_EQ(j["failure"]["kind"], "not-self-injective");
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, PeriodOfLoop) {
  auto j = run({"period", fx("loop_p3"), "--max", "12"}).json();
  EXPECT_EQ(j["periodicity"]["quasi_period"], 1);
  EXPECT_EQ(j["periodicity"]["twist_order"], 2);
  EXPECT_EQ(j["periodicity"]["period"], 2);
  EXPECT_EQ(j["periodicity"]["twist_matrix"], Json::parse("[[1,0],[0,2]]"));
}

TEST(Cli, FixedQuasiPeriod) {
  auto j = run({"period", fx("preprojective_a2"), "--n", "3"}).json();
  EXPECT_EQ(j["periodicity"]["quasi_period"], 3);
  EXPECT_EQ(j["periodicity"]["quasi_period_minimal"], false);
}

TEST(Cli, AngulateStandardAndComplete) {
  auto s = run({"angulate", "standard", fx("nakayama_2_2"), "--n", "4"});
  ASSERT_EQ(s.code, 0) << s.err;
  auto js = s.json();
  EXPECT_EQ(js["angles"].size(), 2u);
  EXPECT_EQ(js["angles"][0]["module"], "S_1");
  EXPECT_EQ(js["functor_sequence"]["suspension_object_map"], Json::array({0, 1}));  // Ω^4 twist is trivial
  auto three = run({"angulate", "standard", fx("nakayama_2_2"), "--m", "3"});
  ASSERT_EQ(three.code, 0) << three.err;
  EXPECT_EQ(three.json()["functor_sequence"]["suspension_object_map"], Json::array({1, 0}));
  auto c = run({"angulate", "complete", fx("loop_p3"), "--m", "3", "--seed", "5"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.json()["angles"][0]["certificate"]["verdict"], true);
}

TEST(Cli, VerifyIsDeterministicAndSeeded) {
  std::vector<std::string> args{"verify", fx("loop_p3"), "--m", "3", "--samples", "10", "--seed", "7"};
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["seed"], 7);
  EXPECT_EQ(a.json()["report"]["axioms"]["N2"]["failed"], 0);
}

TEST(Cli, SeedFromEnvironment) {
  std::vector<std::string> args{"verify", fx("loop_p3"), "--m", "3", "--samples", "2"};
  EXPECT_EQ(run(args, "42").json()["seed"], 42);
  EXPECT_EQ(run(args).json()["seed"], 0);
  args.insert(args.end(), {"--seed", "3"});
  EXPECT_EQ(run(args, "42").json()["seed"], 3);
  EXPECT_EQ(run({"verify", fx("loop_p3"), "--m", "3"}, "x1").code, 2);
}

TEST(Cli, PerturbChoicesIsReported) {
  auto j = run({"verify", fx("nakayama_2_2"), "--n", "4", "--samples", "3", "--perturb-choices"}).json();
  ASSERT_TRUE(j.contains("perturbation"));
  EXPECT_TRUE(j["perturbation"]["verdicts_agree"].is_boolean());
}

TEST(Cli, EmitWritesSameBytes) {
  auto path = ::testing::TempDir() + "nangle_emit.json";
  auto r = run({"period", fx("loop_p2"), "--emit", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nangle::read_file(path), r.out);
  std::remove(path.c_str());
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"period"}).code, 2);
  EXPECT_EQ(run({"period", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"angulate", "sideways", fx("loop_p3")}).code, 2);
  EXPECT_EQ(run({"verify", fx("loop_p3"), "--m", "0"}).code, 2);
  auto short_seq = run({"verify", fx("loop_p3"), "--m", "1"});
  EXPECT_EQ(short_seq.code, 2);
  EXPECT_NE(short_seq.err.find("below 3"), std::string::npos);
  EXPECT_TRUE(short_seq.out.empty());
}

TEST(Cli, NoPeriodWithinBoundExitsOne) {
  auto r = run({"period", fx("nakayama_2_3"), "--max", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["failure"]["kind"], "no-period");
}
