#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

/// Runs xcli with the given arguments; stderr is discarded.
Outcome xcli(const std::string& args) {
  const std::string cmd = std::string(XCLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

TEST(Xcli, Orthogonality) {
  const Outcome r = xcli("orthogonality --p 5 --n 1 --r 13");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.size(), 16U);
  for (const auto& rec : j) EXPECT_EQ(rec["verdict"], "PASS");
}

TEST(Xcli, Counterexample) {
  const Outcome r = xcli("counterexample --p 3 --j 1");
  ASSERT_EQ(r.status, 0);
  bool saw_rank = false;
  for (const auto& rec : nlohmann::json::parse(r.out))
    if (rec["experiment"].get<std::string>().find("rank") != std::string::npos) saw_rank = true;
  EXPECT_TRUE(saw_rank);
}

TEST(Xcli, JordanBlocks) {
  const Outcome r = xcli("jordan --p 7 --n 1 --r 3");
  ASSERT_EQ(r.status, 0);
  const auto rec = nlohmann::json::parse(r.out).at(0);
  std::vector<std::size_t> sizes;
  for (const auto& a : rec["assertions"])
    if (a["name"] == "block multiset")
      for (const auto& b : a["got"]) sizes.push_back(b[1].get<std::size_t>());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 3, 3}));
}

TEST(Xcli, CsvFormat) {
  const Outcome r = xcli("set-x --p 3 --r 5 --bound 8 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("kind,name,p_or_q,m,r,k,theta_exponent,seed,check,expected,got,pass\n", 0), 0U);
  EXPECT_NE(r.out.find("[1,2,3,5,6,7]"), std::string::npos);
}

TEST(Xcli, UsageAndPreconditionErrorsExitTwo) {
  EXPECT_EQ(xcli("").status, 2);
  EXPECT_EQ(xcli("nosuchcommand").status, 2);
  EXPECT_EQ(xcli("orthogonality --p 4 --r 13").status, 2);
  EXPECT_EQ(xcli("orthogonality --p 5").status, 2);
  EXPECT_EQ(xcli("set-x --p 11 --r 5").status, 2);
  EXPECT_EQ(xcli("counterexample --p 2 --j 1").status, 2);
  EXPECT_EQ(xcli("jordan --p 5 --r 5").status, 2);
  EXPECT_EQ(xcli("orthogonality --p 5 --r 13 --format xml").status, 2);
  EXPECT_EQ(xcli("--help").status, 0);
}

TEST(Xcli, SeededOutputIsStable) {
  const Outcome a = xcli("chop --p 5 --r 7 --seed 9");
  const Outcome b = xcli("chop --p 5 --r 7 --seed 9");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const Outcome c = xcli("translate-rank --p 3 --n 2 --r 5 --trials 20 --seed 4");
  const Outcome d = xcli("translate-rank --p 3 --n 2 --r 5 --trials 20 --seed 4");
  ASSERT_EQ(c.status, 0);
  EXPECT_EQ(c.out, d.out);
}

}  // namespace
