#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

fs::path scratch() {
  auto p = fs::temp_directory_path() / ("jostspec-cli-" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

Result run(const std::string& args, const fs::path& out) {
  std::string cmd = std::string(JOSTSPEC_CLI) + " --out " + out.string() + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  std::string s;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) s.append(buf, n);
  int st = ::pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, s};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, BarrierStreamHasOneLinePerBranch) {
  auto d = scratch() / "barrier";
  auto r = run("barrier --gamma 1 --R 1200", d);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2020);
  EXPECT_EQ(slurp(d / "barrier.jsonl"), r.out);
  EXPECT_TRUE(fs::exists(d / "barrier.manifest.json"));
}

TEST(Cli, ZeroPotentialGivesAnEmptySpectrum) {
  auto d = scratch() / "zero";
  auto r = run(R"(spectrum --potential '{"kind":"zero"}')", d);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[]\n");
  EXPECT_NE(slurp(d / "spectrum.json").find("\"eigenvalues\": []"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  auto d = scratch() / "usage";
  EXPECT_EQ(run("", d).code, 2);
  EXPECT_EQ(run("frobnicate", d).code, 2);
  EXPECT_EQ(run("jost --z 1,1", d).code, 2);
  EXPECT_EQ(run(R"(jost --potential '{"kind":"cubic"}' --z 1,1)", d).code, 2);
  EXPECT_EQ(run(R"(jost --potential '{"kind":"zero"}' --z 1)", d).code, 2);
  EXPECT_EQ(run("barrier --gamma -1 --R 3", d).code, 2);
}

TEST(Cli, SumsOfAStoredSpectrum) {
  auto d = scratch() / "sums";
  ASSERT_EQ(run(R"(spectrum --potential '{"kind":"barrier","gamma":3,"R":4}')", d).code, 0);
  auto r = run("sums --kind j --spectrum " + (d / "spectrum.json").string(), d);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"kind\": \"Jensen\""), std::string::npos);
  EXPECT_EQ(run("sums --kind gen --alpha 1 --spectrum " + (d / "spectrum.json").string(), d).code, 2);
}

TEST(Cli, BoundsPassOnAStepPotential) {
  auto d = scratch() / "bounds";
  auto r = run(R"(bounds --potential '{"kind":"step","breakpoints":[0,1,3],"values":[[0,2],[-1,1]]}')", d);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"name\": \"poly\""), std::string::npos);
}

TEST(Cli, RerunsAreByteIdentical) {
  auto a = scratch() / "det-a", b = scratch() / "det-b";
  std::string args = R"(--threads 1 spectrum --potential '{"kind":"barrier","gamma":2,"R":10}')";
  ASSERT_EQ(run(args, a).code, 0);
  ASSERT_EQ(run(R"(--threads 2 spectrum --potential '{"kind":"barrier","gamma":2,"R":10}')", b).code, 0);
  EXPECT_EQ(slurp(a / "spectrum.json"), slurp(b / "spectrum.json"));
  EXPECT_EQ(slurp(a / "spectrum.csv"), slurp(b / "spectrum.csv"));
}

TEST(Cli, ToyConstructionWritesStages) {
  auto d = scratch() / "construct";
  auto r = run("construct --stages 2 --profile toy", d);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(d / "stage-001.json"));
  EXPECT_TRUE(fs::exists(d / "stage-002.json"));
  EXPECT_TRUE(fs::exists(d / "construct.csv"));
}
