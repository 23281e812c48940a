#include <filesystem>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "thma/io.hpp"

namespace thma {
namespace {

using testing::run_cli;

// Tests run from the data directory.

Json report(const std::vector<std::string>& args) { return Json::parse(run_cli(args).out); }

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"validate", "two.json"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"validate", "missing_triple.json"}).code, cli::kAxiomViolation);
  EXPECT_EQ(run_cli({"validate", "malformed.json"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"validate", "no_such_file.json"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"homology", "codisc_ab.json", "--budget", "5"}).code, cli::kBudgetExceeded);
  EXPECT_EQ(run_cli({"check", "a", "disc_inclusion.json"}).code, cli::kHypothesisFails);
  EXPECT_EQ(run_cli({"check", "a", "selector.json"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"check", "morita", "identity_two.json"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"check", "cover", "cover_12.json"}).code, cli::kOk);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"build", "Q", "two.json"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"homology", "two.json", "--trunc", "0"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"homology", "two.json", "--format", "xml"}).code, cli::kParseError);
  // A category where a functor is expected.
  EXPECT_EQ(run_cli({"check", "a", "two.json"}).code, cli::kParseError);
  // Typed input of the wrong kind for the checker.
  EXPECT_EQ(run_cli({"build", "cech", "two.json"}).code, cli::kParseError);
}

TEST(Cli, ReportShape) {
  const Json r = report({"homology", "z2.json", "--trunc", "4"});
  EXPECT_EQ(r["command"]["name"], "homology");
  EXPECT_EQ(r["exit_code"], 0);
  EXPECT_EQ(r["status"], "ok");
  ASSERT_EQ(r["inputs"].size(), 1u);
  EXPECT_EQ(r["inputs"][0]["sha256"], sha256_hex(read_file("z2.json")));
  const Json& groups = r["result"]["homology"]["groups"];
  EXPECT_EQ(groups[1]["group"], "Z/2");
  EXPECT_EQ(groups[3]["group"], "Z/2");
  EXPECT_EQ(groups[4]["certified"], false);
}

TEST(Cli, ValidateNamesTheMissingComposite) {
  const Json r = report({"validate", "missing_triple.json"});
  ASSERT_FALSE(r["result"]["violations"].empty());
  EXPECT_NE(r["result"]["violations"][0].get<std::string>().find("u"), std::string::npos);
}

TEST(Cli, CheckReportListsFailures) {
  const Json r = report({"check", "a", "disc_inclusion.json"});
  EXPECT_EQ(r["status"], "hypothesis-fails");
  EXPECT_FALSE(r["result"]["failed"].empty());
  EXPECT_EQ(r["result"]["sound"], true);
}

TEST(Cli, BuildWritesDocuments) {
  const auto out = std::filesystem::temp_directory_path() / "thma_cli_build_T.json";
  const auto run = run_cli({"build", "T", "two.json", "-o", out.string()});
  ASSERT_EQ(run.code, cli::kOk);
  const FinCat t = category_from_json(read_json(out));
  EXPECT_EQ(t.num_objects(), 3u);
  EXPECT_EQ(t.num_morphisms(), 4u);
  EXPECT_TRUE(validate_category(t).ok());
  std::filesystem::remove(out);
}

TEST(Cli, BuildChainsIntoChecks) {
  const auto out = std::filesystem::temp_directory_path() / "thma_cli_fatten.json";
  ASSERT_EQ(run_cli({"build", "fatten", "fatten_two.json", "-o", out.string()}).code, cli::kOk);
  EXPECT_EQ(run_cli({"check", "morita", out.string()}).code, cli::kOk);
  EXPECT_EQ(run_cli({"check", "a", out.string()}).code, cli::kOk);
  std::filesystem::remove(out);
}

TEST(Cli, ExportDotGoesToStdout) {
  const auto run = run_cli({"export-dot", "two.json"});
  EXPECT_EQ(run.code, cli::kOk);
  EXPECT_EQ(run.out.rfind("digraph", 0), 0u);
}

TEST(Cli, TextFormat) {
  const auto run = run_cli({"homology", "two.json", "--format", "text"});
  EXPECT_NE(run.out.find("result.homology.groups[0].group: Z\n"), std::string::npos) << run.out;
}

TEST(Cli, ShuffledRunsAgree) {
  for (const auto& args : std::vector<std::vector<std::string>>{{"homology", "z2.json"},
                                                                 {"check", "a", "selector.json"},
                                                                 {"check", "cover", "cover_12.json"},
                                                                 {"build", "S", "identity_two.json"}}) {
    const std::string plain = run_cli(args).out;
    for (int seed = 0; seed < 5; ++seed) {
      auto shuffled = args;
      shuffled.push_back("--shuffle-seed");
      shuffled.push_back(std::to_string(seed));
      EXPECT_EQ(run_cli(shuffled).out, plain) << args[0] << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace thma
