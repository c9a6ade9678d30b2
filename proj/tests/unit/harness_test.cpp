#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "korops/error.hpp"
#include "korops/harness.hpp"

using namespace korops;

namespace {

CheckOptions quick() {
  CheckOptions o;
  o.wall_clock = false;
  o.psumming_sizes = {1, 2};
  o.psumming_xi = 32;
  return o;
}

}  // namespace

TEST(Scenario, ParsesKeysAndComments) {
  const auto s = parse_scenario(
      "# comment\n"
      "name = demo   # trailing\n"
      "n = 2\n"
      "gamma = 1, 0.5\n"
      "phi = z1; z2 + i\n"
      "psi = z1 + 1; z2\n"
      "expected.bounded = true\n"
      "cfg.seed = 42\n"
      "cfg.schedule_steps = 6\n");
  EXPECT_EQ(s.name, "demo");
  EXPECT_EQ(s.n, 2u);
  EXPECT_EQ(s.gamma, (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(s.expected_bounded, true);
  EXPECT_FALSE(s.expected_compact.has_value());
  EXPECT_EQ(s.cfg.seed, 42u);
  EXPECT_EQ(s.phi().dim(), 2u);
  const auto again = parse_scenario(s.to_text());
  EXPECT_EQ(again.to_text(), s.to_text());
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  auto message = [](const char* text) {
    try {
      parse_scenario(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("name = a\nbogus = 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("name = a\nname = b\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("name = a\n\nn = two\n").find("line 3"), std::string::npos);
  EXPECT_FALSE(message("name = a\nn = 1\ngamma = 1\nphi = z1\n").empty());
  EXPECT_FALSE(message("name = a\nn = 1\ngamma = 1\nphi = z1 +\npsi = z1\n").empty());
}

TEST(Scenario, BuiltinsAndFilesAgree) {
  const auto all = builtin_scenarios();
  ASSERT_EQ(all.size(), 5u);
  for (const auto& s : all) {
    const auto f = load_scenario(std::string(KOROPS_SCENARIO_DIR) + "/" + s.name + ".scn");
    EXPECT_EQ(f.to_text(), s.to_text()) << s.name;
  }
  const auto t = find_builtin("translation-1d");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->expected_bounded, true);
  EXPECT_EQ(t->expected_compact, false);
  EXPECT_EQ(find_builtin("identity-pair")->expected_compact, true);
  EXPECT_EQ(find_builtin("inversion-shift-1d")->expected_bounded, false);
  EXPECT_FALSE(find_builtin("nope"));
}

TEST(Scenario, ListMentionsGroundTruths) {
  std::ostringstream os;
  cmd_scenarios_list(os);
  for (const char* name :
       {"identity-pair", "translation-1d", "translation-2d", "dilation-1d", "inversion-shift-1d"}) {
    EXPECT_NE(os.str().find(name), std::string::npos);
  }
}

TEST(Config, Precedence) {
  Scenario s = *find_builtin("translation-1d");
  s.cfg.seed = 5;
  s.cfg.starts = 10;
  CfgOverrides flags;
  flags.starts = 20;
  const auto c = effective_config(s, flags);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.starts, 20);
  EXPECT_EQ(c.refine_steps, 200);
  s.cfg.schedule_ratio = 4.0;
  const auto d = effective_config(s, {});
  ASSERT_FALSE(d.schedules.empty());
  for (const auto& sch : d.schedules) EXPECT_EQ(sch.ratio, 4.0);
}

TEST(Check, IdentityPairReport) {
  const auto r = run_check(*find_builtin("identity-pair"), quick());
  EXPECT_EQ(r.boundedness.verdict, BoundednessVerdict::Bounded);
  EXPECT_EQ(r.compactness.verdict, CompactnessVerdict::Compact);
  EXPECT_EQ(exit_code_for(r), kExitOk);
  for (const auto& e : r.lower_bounds) EXPECT_EQ(e.value, 0.0);
  for (const auto& p : r.psumming) EXPECT_EQ(p.ratio, 0.0);
  EXPECT_EQ(r.wall_ms, 0.0);
}

TEST(Check, InconclusiveExitCode) {
  RunReport r;
  r.boundedness.verdict = BoundednessVerdict::Bounded;
  r.compactness.verdict = CompactnessVerdict::Inconclusive;
  EXPECT_EQ(exit_code_for(r), kExitInconclusive);
  r.compactness.verdict = CompactnessVerdict::Noncompact;
  EXPECT_EQ(exit_code_for(r), kExitOk);
}

TEST(Check, RejectsNonSelfMaps) {
  Scenario s = *find_builtin("translation-1d");
  s.psi_text = "z1 - 2*i";
  EXPECT_THROW(run_check(s, quick()), DomainError);
}

TEST(Report, JsonRoundTripAndByteStability) {
  const auto s = *find_builtin("inversion-shift-1d");
  const auto a = run_check(s, quick());
  const auto b = run_check(s, quick());
  const std::string ja = report_to_json(a);
  EXPECT_EQ(ja, report_to_json(b));
  EXPECT_EQ(report_to_json(report_from_json(ja)), ja);
  for (const char* key : {"\"scenario\"", "\"version\"", "\"seed\"", "\"boundedness\"",
                          "\"sup_estimate\"", "\"witness\"", "\"verdict\"", "\"traces\"",
                          "\"compactness\"", "\"limsup_phi\"", "\"limsup_psi\"", "\"lower_bounds\"",
                          "\"psumming\"", "\"wall_ms\""}) {
    EXPECT_NE(ja.find(key), std::string::npos) << key;
  }
}

TEST(Report, NumbersAndCsv) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(INFINITY), "Infinity");
  EXPECT_EQ(format_number(-INFINITY), "-Infinity");
  EXPECT_EQ(format_number(NAN), "NaN");
  const auto r = run_check(*find_builtin("translation-1d"), quick());
  const auto csv = report_to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "record,name,step,z,value");
  const auto back = report_from_json(report_to_json(r));
  EXPECT_EQ(back.boundedness.sup_estimate, r.boundedness.sup_estimate);
  EXPECT_EQ(back.boundedness.witness, r.boundedness.witness);
  EXPECT_EQ(back.compactness.limsup_phi, r.compactness.limsup_phi);
}

TEST(Output, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "korops_atomic_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "r.json").string();
  write_atomically(path, "first");
  write_atomically(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "second");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(write_atomically((dir / "missing" / "r.json").string(), "x"), Error);
  std::filesystem::remove_all(dir);
}
