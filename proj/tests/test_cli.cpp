#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

using qfodc::cli::run;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run(args, o, e);
  return {c, o.str(), e.str()};
}

}  // namespace

TEST(Cli, BuildFundamentalMinusOne) {
  Result r = call({"build", "--series", "sl", "--n", "2", "--corep", "u", "--zeta", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["dim"], 4);
  EXPECT_EQ(j["basis"].size(), 4u);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_TRUE(j.contains("cert_degree"));
}

TEST(Cli, BuildTrivial) {
  Result r = call({"build", "--series", "sl", "--n", "2", "--corep", "1", "--zeta", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["dim"], 0);
}

TEST(Cli, InadmissibleZeta) {
  Result r = call({"build", "--series", "sl", "--n", "2", "--zeta", "i"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParseErrorsNameToken) {
  Result r = call({"build", "--corep", "tensor(u,bogus)"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("bogus"), std::string::npos) << r.err;
  EXPECT_EQ(call({"frobnicate"}).code, 3);
  EXPECT_EQ(call({"build", "--series", "so"}).code, 3);
  EXPECT_EQ(call({"verify"}).code, 3);
  EXPECT_EQ(call({"verify", "--claim", "nonsense"}).code, 3);
  EXPECT_EQ(call({"build", "--series", "sp", "--n", "3"}).code, 3);
}

TEST(Cli, Help) {
  Result r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--claim"), std::string::npos);
}

TEST(Cli, VerifyMinorTauSl3) {
  Result r = call({"verify", "--claim", "minor-tau", "--n", "3", "--k", "2", "--degree", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["details"]["minors"][0]["k"], 2);
  EXPECT_EQ(j["details"]["minors"][0]["verdict"], "equal");
}

TEST(Cli, VerifyFactorizability) {
  Result r = call({"verify", "--claim", "factorizability", "--degree", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["details"]["gram_rank"], 14);
  EXPECT_EQ(r.json()["details"]["truncation_dim"], 14);
}

TEST(Cli, VerifyLeibniz) {
  Result r = call({"verify", "--claim", "leibniz", "--zeta", "-1", "--pairs", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["details"]["passed"], 5);
}

TEST(Cli, VerifyDirectSumFailsOnOverlap) {
  Result ok = call({"verify", "--claim", "direct-sum", "--zeta", "1", "--zeta2", "-1"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.json()["details"]["rank"], 8);
  Result bad = call({"verify", "--claim", "direct-sum", "--zeta", "-1", "--zeta2", "-1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json()["status"], "fail");
  EXPECT_TRUE(bad.json()["details"].contains("witness"));
}

TEST(Cli, ClassifySum) {
  Result r = call({"classify", "--corep", "sum(1,u)", "--zeta", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  ASSERT_EQ(j["components"].size(), 2u);
  EXPECT_EQ(j["components"][0]["dim"], 4);
  EXPECT_EQ(j["components"][1]["dim"], 1);
  EXPECT_EQ(j["components"][0]["zeta"], j["components"][1]["zeta"]);
  EXPECT_EQ(j["total_dim"], 5);
}

TEST(Cli, ClassifyFromCentral) {
  Result r = call({"classify", "--from-central", "u@-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["components"].size(), 1u);
  EXPECT_EQ(call({"classify", "--from-central", "u"}).code, 3);
}

TEST(Cli, ClassifyZeroSpace) {
  Result r = call({"classify", "--corep", "1", "--zeta", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["components"].empty());
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"report", "--corep", "u", "--zeta", "-1", "--pairs", "4"};
  Result a = call(args), b = call(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  Result m1 = call({"classify", "--format", "markdown", "--corep", "sum(1,u)", "--zeta", "-1"});
  Result m2 = call({"classify", "--format", "markdown", "--corep", "sum(1,u)", "--zeta", "-1"});
  EXPECT_EQ(m1.out, m2.out);
  EXPECT_EQ(m1.out.rfind("#", 0), 0u);
}

TEST(Cli, OutFile) {
  auto path = std::filesystem::temp_directory_path() / "qfodc_cli_test.json";
  Result r = call({"build", "--zeta", "-1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  Json j = Json::parse(f);
  EXPECT_EQ(j["dim"], 4);
  std::filesystem::remove(path);
  EXPECT_EQ(call({"build", "--out", "/nonexistent-dir/x.json"}).code, 3);
}
