// Command-line front end: trace-driven simulation, synthetic workloads,
// trace statistics, and parameter-grid experiment batches.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "salsa/config.hpp"
#include "salsa/report.hpp"
#include "salsa/sim.hpp"
#include "salsa/trace.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

struct TraceOptions {
  std::string traceFile;
  std::string zipfSpec;  // n,s,L,seed
};

std::vector<uint64_t> loadTrace(const TraceOptions& opt) {
  if (!opt.traceFile.empty() && !opt.zipfSpec.empty())
    throw salsa::ConfigError("give either --trace or --zipf, not both");
  if (!opt.traceFile.empty()) return salsa::parseTrace(opt.traceFile);
  if (!opt.zipfSpec.empty()) {
    auto parts = salsa::detail::splitCsv(opt.zipfSpec);
    if (parts.size() != 4) throw salsa::ConfigError("--zipf expects n,s,L,seed");
    return salsa::generateZipf(std::stoull(parts[0]), std::stod(parts[1]),
                               std::stoull(parts[2]), std::stoull(parts[3]));
  }
  throw salsa::ConfigError("a trace source is required: --trace <file> or --zipf n,s,L,seed");
}

salsa::SystemConfig configWithOverrides(const std::string& configPath,
                                        const std::vector<std::pair<std::string, std::string>>& overrides) {
  salsa::SystemConfig base = salsa::parseConfigFile(configPath);
  if (overrides.empty()) return base;
  std::string text = salsa::serializeConfig(base);
  for (const auto& [key, value] : overrides) text += key + " = " + value + "\n";
  std::istringstream in(text);
  return salsa::parseConfig(in, configPath + " (+overrides)");
}

void runOneCell(const salsa::SystemConfig& cfg, const std::vector<uint64_t>& trace,
                const fs::path& outDir, bool events) {
  fs::create_directories(outDir);
  salsa::Simulator sim(cfg);
  sim.keepEventLog = events;
  salsa::SimReport rep = sim.run(trace);
  salsa::writeFile((outDir / "report.json").string(), salsa::reportToJson(rep).dump(2) + "\n");
  salsa::writeFile((outDir / "report.csv").string(), salsa::reportToCsv(rep));
  if (events) salsa::writeFile((outDir / "events.csv").string(), salsa::adLogToCsv(sim.adLog()));
  std::cout << "normalizedServiceCost=" << rep.normalizedServiceCost
            << " bitsPerRequest=" << rep.bitsPerRequest << " out=" << outDir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive cache content advertisement and selection simulator"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write reports");
  std::string configPath, outDir, policy, selection;
  TraceOptions traceOpt;
  double loss = -1.0;
  bool events = false;
  simulate->add_option("--config", configPath, "Config file (key = value)")->required();
  simulate->add_option("--trace", traceOpt.traceFile, "Trace file, one key per line");
  simulate->add_option("--zipf", traceOpt.zipfSpec, "Synthetic Zipf trace: n,s,L,seed");
  simulate->add_option("--out", outDir, "Output directory")->required();
  simulate->add_option("--policy", policy, "salsa2 | static");
  simulate->add_option("--selection", selection, "exhaustive | greedy");
  simulate->add_option("--loss", loss, "Delta-update loss probability");
  simulate->add_flag("--events", events, "Also write the per-advertisement event log");

  // stats
  auto* stats = app.add_subcommand("stats", "Print trace statistics");
  std::string statsTrace;
  stats->add_option("--trace", statsTrace, "Trace file")->required();

  // grid
  auto* grid = app.add_subcommand("grid", "Run a batch over a parameter grid");
  std::string gridConfig, gridOut, vary;
  TraceOptions gridTraceOpt;
  grid->add_option("--config", gridConfig, "Config file")->required();
  grid->add_option("--vary", vary, "key=v1,v2,... one cell per value")->required();
  grid->add_option("--trace", gridTraceOpt.traceFile, "Trace file");
  grid->add_option("--zipf", gridTraceOpt.zipfSpec, "Synthetic Zipf trace: n,s,L,seed");
  grid->add_option("--out", gridOut, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      std::vector<std::pair<std::string, std::string>> overrides;
      if (!policy.empty()) overrides.emplace_back("policy", policy);
      if (!selection.empty()) overrides.emplace_back("selection", selection);
      if (loss >= 0.0) overrides.emplace_back("deltaLossProbability", std::to_string(loss));
      salsa::SystemConfig cfg = configWithOverrides(configPath, overrides);
      std::vector<uint64_t> trace = loadTrace(traceOpt);
      runOneCell(cfg, trace, outDir, events);
    } else if (stats->parsed()) {
      auto trace = salsa::parseTrace(statsTrace);
      auto st = salsa::traceStats(trace);
      std::cout << "length=" << st.length << " distinctKeys=" << st.distinctKeys
                << " meanInterArrival="
                << (st.meanInterArrival ? std::to_string(*st.meanInterArrival) : "null")
                << " stdevInterArrival="
                << (st.stdevInterArrival ? std::to_string(*st.stdevInterArrival) : "null")
                << " singularRatio=" << st.singularRatio << "\n";
    } else if (grid->parsed()) {
      size_t eq = vary.find('=');
      if (eq == std::string::npos) throw salsa::ConfigError("--vary expects key=v1,v2,...");
      std::string key = vary.substr(0, eq);
      auto values = salsa::detail::splitCsv(vary.substr(eq + 1));
      if (values.empty()) throw salsa::ConfigError("--vary lists no values");
      std::vector<uint64_t> trace = loadTrace(gridTraceOpt);
      std::ostringstream combined;
      combined << key << ",normalizedServiceCost,bitsPerRequest,meanServiceCost\n";
      for (const auto& value : values) {
        salsa::SystemConfig cfg = configWithOverrides(gridConfig, {{key, value}});
        fs::path cellDir = fs::path(gridOut) / ("cell_" + key + "_" + value);
        fs::create_directories(cellDir);
        salsa::Simulator sim(cfg);
        salsa::SimReport rep = sim.run(trace);
        salsa::writeFile((cellDir / "report.json").string(),
                         salsa::reportToJson(rep).dump(2) + "\n");
        salsa::writeFile((cellDir / "report.csv").string(), salsa::reportToCsv(rep));
        combined.precision(17);
        combined << value << "," << rep.normalizedServiceCost << "," << rep.bitsPerRequest << ","
                 << rep.meanServiceCost << "\n";
        std::cout << key << "=" << value << " normalizedServiceCost=" << rep.normalizedServiceCost
                  << " bitsPerRequest=" << rep.bitsPerRequest << "\n";
      }
      fs::create_directories(gridOut);
      salsa::writeFile((fs::path(gridOut) / "combined.csv").string(), combined.str());
    }
  } catch (const salsa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const salsa::TraceIoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
