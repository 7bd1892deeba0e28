#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" HEIS_CLI_PATH "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string without_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("# timestamp:", 0) != 0 && line.find("\"timestamp\"") == std::string::npos)
      out += line + "\n";
  return out;
}

double csv_value(const std::string& csv, const std::string& name) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(name + ",", 0) == 0) return std::stod(line.substr(name.size() + 1));
  return std::nan("");
}

fs::path scratch_dir(const char* tag) {
  fs::path dir = fs::temp_directory_path() / (std::string("heis_e2e_") + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, DistanceAnchors) {
  auto a = run("dist 3 4 0");
  EXPECT_EQ(a.code, 0);
  EXPECT_DOUBLE_EQ(csv_value(a.out, "r"), 5.0);
  auto b = run("dist 0 0 1");
  EXPECT_EQ(b.code, 0);
  EXPECT_NEAR(csv_value(b.out, "r"), std::sqrt(std::acos(-1.0)), 1e-14);
}

TEST(Cli, DistanceBetweenIsSymmetric) {
  auto a = run("--format json dist --between 1 2 3 0.5 -1 2");
  ASSERT_EQ(a.code, 0);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["suite"], "dist-between");
  for (const auto& e : j["entries"]) EXPECT_TRUE(e["pass"].get<bool>());
}

TEST(Cli, ExitCodeContract) {
  EXPECT_EQ(run("verify closed-form --points 500").code, 0);
  EXPECT_EQ(run("verify closed-form --points 500 --tol closed_form.gap=-1").code, 1);
  EXPECT_EQ(run("verify no-such-suite").code, 2);
  EXPECT_EQ(run("dist 1 2").code, 2);
  EXPECT_EQ(run("--format xml dist 1 2 3").code, 2);
  EXPECT_EQ(run("verify closed-form --points many").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, ByteIdenticalReruns) {
  auto a = run("verify closed-form --points 2000 --seed 7 --no-timestamp");
  auto b = run("verify closed-form --points 2000 --seed 7 --no-timestamp");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("# timestamp"), std::string::npos);
  auto c = run("verify closed-form --points 2000 --seed 7");
  EXPECT_EQ(without_timestamp(c.out), a.out);
  auto d = run("verify closed-form --points 2000 --seed 8 --no-timestamp");
  EXPECT_NE(d.out, a.out);
}

TEST(Cli, JsonOutput) {
  auto a = run("--format json --no-timestamp verify comparison --k2 0 --l 1");
  ASSERT_EQ(a.code, 0);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["suite"], "comparison");
  EXPECT_FALSE(j["entries"].empty());
  EXPECT_FALSE(j.contains("timestamp"));
}

TEST(Cli, SweepF) {
  auto a = run("sweep F --from 0.01 --to 3.13 --n 1000");
  ASSERT_EQ(a.code, 0);
  std::istringstream in(a.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("phi", 0) != 0) ++rows;
  EXPECT_EQ(rows, 1000);
}

TEST(Cli, ConfigFile) {
  fs::path dir = scratch_dir("config");
  std::ofstream(dir / "run.ini") << "[global]\nformat = json\n\n[closed-form]\npoints = 300\n\n"
                                    "[tol]\nclosed_form.gap = 1e-9\n";
  auto a = run("--config " + (dir / "run.ini").string() + " --no-timestamp verify closed-form");
  ASSERT_EQ(a.code, 0);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["suite"], "closed-form");
  EXPECT_EQ(run("--config " + (dir / "missing.ini").string() + " list").code, 2);
}

TEST(Cli, OutputFileAndEnvironmentDirectory) {
  fs::path dir = scratch_dir("out");
  auto a = run("--out " + (dir / "d.csv").string() + " dist 3 4 0");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(slurp(dir / "d.csv").find("r,5.0"), std::string::npos);
  auto b = run("--format json verify cutoff", "HEIS_OUT_DIR=" + dir.string());
  EXPECT_EQ(b.code, 0);
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") found = true;
  EXPECT_TRUE(found);
}

TEST(Cli, ListNamesSuites) {
  auto a = run("list");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("geodesic-oracle"), std::string::npos);
}

TEST(Cli, GeodesicQuery) {
  auto a = run("geodesic 1 0 1 --N 64 --restarts 2");
  EXPECT_EQ(a.code, 0);
}
