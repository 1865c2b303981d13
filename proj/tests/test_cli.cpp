#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string readFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeTextFile(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

int runCli(const std::string& args) {
  std::string cmd = std::string(SALSA_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
  int rc = std::system(cmd.c_str());
#ifdef _WIN32
  return rc;
#else
  return WEXITSTATUS(rc);
#endif
}

// Scratch area for one test run, removed on destruction.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::path("cli_scratch") / name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

const std::string kConfig =
    "numCaches = 3\n"
    "capacities = 64,64,64\n"
    "accessCosts = 1,2,3\n"
    "missPenalty = 30\n";

}  // namespace

TEST_CASE("simulate with a synthetic trace writes reports and exits 0") {
  Scratch s("sim_zipf");
  writeTextFile(s.dir / "cfg.txt", kConfig);
  std::string out = (s.dir / "out").string();
  int rc = runCli("simulate --config " + (s.dir / "cfg.txt").string() +
                  " --zipf 100,0.9,500,3 --out " + out + " --events");
  REQUIRE(rc == 0);
  REQUIRE(fs::exists(fs::path(out) / "report.json"));
  REQUIRE(fs::exists(fs::path(out) / "report.csv"));
  REQUIRE(fs::exists(fs::path(out) / "events.csv"));
  auto rep = nlohmann::json::parse(readFile(fs::path(out) / "report.json"));
  CHECK(rep["requestCount"] == 500);
  CHECK(rep["config"]["numCaches"] == 3);
  CHECK(rep["normalizedServiceCost"].get<double>() >= 1.0 - 1e-9);
}

TEST_CASE("repeated runs are byte-identical") {
  Scratch s("sim_repeat");
  writeTextFile(s.dir / "cfg.txt", kConfig);
  std::string a = (s.dir / "a").string();
  std::string b = (s.dir / "b").string();
  std::string common = "simulate --config " + (s.dir / "cfg.txt").string() +
                       " --zipf 100,0.9,500,3 --events --out ";
  REQUIRE(runCli(common + a) == 0);
  REQUIRE(runCli(common + b) == 0);
  CHECK(readFile(fs::path(a) / "report.json") == readFile(fs::path(b) / "report.json"));
  CHECK(readFile(fs::path(a) / "report.csv") == readFile(fs::path(b) / "report.csv"));
  CHECK(readFile(fs::path(a) / "events.csv") == readFile(fs::path(b) / "events.csv"));
}

TEST_CASE("simulate accepts policy, selection, and loss overrides") {
  Scratch s("sim_overrides");
  writeTextFile(s.dir / "cfg.txt", kConfig);
  std::string out = (s.dir / "out").string();
  int rc = runCli("simulate --config " + (s.dir / "cfg.txt").string() +
                  " --zipf 100,0.9,300,3 --policy static --selection greedy --loss 0.1 --out " +
                  out);
  REQUIRE(rc == 0);
  auto rep = nlohmann::json::parse(readFile(fs::path(out) / "report.json"));
  CHECK(rep["config"]["policy"] == "static");
  CHECK(rep["config"]["selection"] == "greedy");
  CHECK(rep["config"]["deltaLossProbability"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("stats prints trace summary and exits 0") {
  Scratch s("stats");
  writeTextFile(s.dir / "trace.txt", "a\nb\na\nb\n");
  REQUIRE(runCli("stats --trace " + (s.dir / "trace.txt").string()) == 0);
  std::string out = readFile("cli_stdout.txt");
  CHECK(out.find("length=4") != std::string::npos);
  CHECK(out.find("distinctKeys=2") != std::string::npos);
  CHECK(out.find("meanInterArrival=2.0") != std::string::npos);
}

TEST_CASE("grid runs one cell per value and writes combined.csv") {
  Scratch s("grid");
  writeTextFile(s.dir / "cfg.txt", kConfig);
  std::string out = (s.dir / "out").string();
  int rc = runCli("grid --config " + (s.dir / "cfg.txt").string() +
                  " --vary missPenalty=10,30 --zipf 100,0.9,300,3 --out " + out);
  REQUIRE(rc == 0);
  REQUIRE(fs::exists(fs::path(out) / "cell_missPenalty_10" / "report.json"));
  REQUIRE(fs::exists(fs::path(out) / "cell_missPenalty_30" / "report.json"));
  std::string combined = readFile(fs::path(out) / "combined.csv");
  CHECK(combined.rfind("missPenalty,normalizedServiceCost,bitsPerRequest,meanServiceCost\n", 0) ==
        0);
  CHECK(std::count(combined.begin(), combined.end(), '\n') == 3);  // header + 2 cells
  auto rep10 = nlohmann::json::parse(readFile(fs::path(out) / "cell_missPenalty_10" / "report.json"));
  CHECK(rep10["config"]["missPenalty"].get<double>() == 10.0);
}

TEST_CASE("invalid config exits 2") {
  Scratch s("bad_config");
  writeTextFile(s.dir / "cfg.txt", kConfig + "bogusKey = 1\n");
  int rc = runCli("simulate --config " + (s.dir / "cfg.txt").string() +
                  " --zipf 100,0.9,100,3 --out " + (s.dir / "out").string());
  CHECK(rc == 2);
  CHECK(readFile("cli_stderr.txt").find("config error") != std::string::npos);
}

TEST_CASE("missing config file exits 2, missing trace file exits 1") {
  Scratch s("missing");
  writeTextFile(s.dir / "cfg.txt", kConfig);
  CHECK(runCli("simulate --config no_such_config.txt --zipf 100,0.9,100,3 --out " +
               (s.dir / "out").string()) == 2);
  CHECK(runCli("simulate --config " + (s.dir / "cfg.txt").string() +
               " --trace no_such_trace.txt --out " + (s.dir / "out").string()) == 1);
  CHECK(runCli("stats --trace no_such_trace.txt") == 1);
}

TEST_CASE("a trace source is required, and only one may be given") {
  Scratch s("trace_source");
  writeTextFile(s.dir / "cfg.txt", kConfig);
  writeTextFile(s.dir / "trace.txt", "a\nb\n");
  CHECK(runCli("simulate --config " + (s.dir / "cfg.txt").string() + " --out " +
               (s.dir / "out").string()) == 2);
  CHECK(runCli("simulate --config " + (s.dir / "cfg.txt").string() + " --trace " +
               (s.dir / "trace.txt").string() + " --zipf 10,1,10,1 --out " +
               (s.dir / "out").string()) == 2);
}
