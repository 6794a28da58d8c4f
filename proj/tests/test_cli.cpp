#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stewart/stewart_automaton.hpp"
#include "stewart/walnut_format.hpp"

using namespace stewart;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(STEWART_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string kCore = std::string(STEWART_SOURCE_DIR) + "/queries/core.walnut";

}  // namespace

TEST(Cli, Generate) {
  EXPECT_EQ(run("generate afe").out, "01?011010010011010011011010\n");
  EXPECT_EQ(run("generate '(ab)' --len 9").out, "011010010\n");
  const CliRun pos = run("generate 'af(c)' 12");
  EXPECT_EQ(pos.out.size(), 13u);
  EXPECT_EQ(pos.out, run("generate 'af(c)' --len 12").out);
  EXPECT_EQ(run("generate agz").status, 3);
  EXPECT_EQ(run("generate '(e)' 3").status, 3);
  EXPECT_EQ(run("generate '(e)' 3 --fill 1").out, "101\n");
}

TEST(Cli, EvalCoreScriptIsDeterministic) {
  EXPECT_EQ(run(kCore).status, 3);
  const CliRun b = run("eval " + kCore);
  const CliRun c = run("eval " + kCore);
  EXPECT_EQ(b.status, 0);
  EXPECT_EQ(b.out, c.out);
  EXPECT_NE(b.out.find("def pal: 5 states, var n"), std::string::npos);
  EXPECT_NE(b.out.find("eval hascube: FALSE"), std::string::npos);
  const CliRun d = run("eval --timestamp " + kCore);
  ASSERT_EQ(d.out.rfind("# ", 0), 0u);
  EXPECT_EQ(d.out.substr(d.out.find('\n') + 1), b.out);
}

TEST(Cli, EvalExitCodes) {
  const std::string wrong = temp_file("stewart_wrong.walnut",
                                      "eval t \"?lsd_3 Ex x=1\":\n# returns FALSE\n");
  EXPECT_EQ(run("eval " + wrong).status, 1);
  EXPECT_EQ(run("eval --state-cap 20 " + kCore).status, 2);
  EXPECT_EQ(run("eval --formula 'Ex $nosuch(x)'").status, 3);
  EXPECT_EQ(run("eval --formula '?lsd_3 Ex x=(1'").status, 3);
  EXPECT_EQ(run("eval").status, 3);
  EXPECT_EQ(run("eval /nonexistent/file").status, 3);
  EXPECT_EQ(run("eval --strict --formula '?lsd_3 Ex,t $link7(x,t)'").status, 3);
  EXPECT_EQ(run("eval --formula '?lsd_3 Ex,t $link7(x,t)'").out, "eval formula: TRUE\n");
}

TEST(Cli, EvalJsonAndEnumerate) {
  const CliRun r = run("eval --format json --enumerate 3 --formula "
                    "'?lsd_3 Et,i Aj (j<n) => TP[t][i+j]=TP[t][(i+n)-(j+1)]'");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& res = j.at("results").at(0);
  EXPECT_EQ(res.at("vars"), nlohmann::json::array({"n"}));
  EXPECT_EQ(res.at("accepted").size(), 8u);
  const CliRun t = run("eval --enumerate 2 --formula '?lsd_3 x<2 & y=x+1'");
  EXPECT_NE(t.out.find("accepted: (0,1) (1,2)"), std::string::npos) << t.out;
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check palindromes --len 4").status, 0);
  EXPECT_EQ(run("check nosuch").status, 3);
  EXPECT_EQ(run("check cubes --len 0").status, 0);
  const CliRun j = run("check ap --len 3 --format json");
  EXPECT_EQ(nlohmann::json::parse(j.out).at(0).at("status"), "pass");
}

TEST(Cli, ExportTpRoundTrip) {
  const CliRun r = run("export TP");
  ASSERT_EQ(r.status, 0);
  const Dfao m = read_walnut_dfao(r.out, Totality::kAllowPartial);
  EXPECT_TRUE(equivalent(m, stewart_automaton()));
  const std::string out = (std::filesystem::temp_directory_path() / "stewart_link.txt").string();
  EXPECT_EQ(run("export link -o " + out).status, 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("lsd_3 lsd_7\n", 0), 0u);
  EXPECT_EQ(run("export nosuch").status, 3);
  const CliRun dot = run("export pal --format dot --script " + kCore);
  EXPECT_EQ(dot.status, 0);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
}
