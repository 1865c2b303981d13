#ifndef SALSA_CONFIG_HPP_
#define SALSA_CONFIG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace salsa {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SelectionAlgorithm { exhaustive, greedy };
enum class Policy { salsa2, staticBaseline };

struct SystemConfig {
  int numCaches = 3;
  std::vector<size_t> capacities;    // items, one per cache
  std::vector<double> accessCosts;   // one per cache
  double missPenalty = 30.0;

  // Indicator sizing: initial size is bitsPerElement * capacity; the
  // feasible range is [sizeMinBitsPerElement, sizeMaxBitsPerElement] times
  // capacity, per cache.
  double bitsPerElement = 14.0;
  double sizeMinBitsPerElement = 7.0;
  double sizeMaxBitsPerElement = 28.0;

  double budget = 140.0;        // B, bits per insertion
  uint32_t minInterval = 1;     // u_min
  uint32_t syncFactor = 10;     // R
  uint32_t clampFactor = 2;     // C

  double deltaMrone = 0.5;
  double deltaMrzero = 0.25;
  double mroneThreshold = 0.01;
  double mrzeroThreshold = 0.88;
  double mroneInit = 0.001;
  double mrzeroInit = 0.08;

  double deltaLossProbability = 0.0;
  uint64_t rngSeed = 1;
  SelectionAlgorithm selection = SelectionAlgorithm::exhaustive;
  Policy policy = Policy::salsa2;

  // Test hook: drop exactly the n-th delta update delivered to the client
  // (-1: disabled). Not exposed in config files.
  int64_t forcedDeltaDropIndex = -1;

  uint32_t initialSizeBits(size_t cache) const {
    return static_cast<uint32_t>(std::lround(bitsPerElement * capacities.at(cache)));
  }
  uint32_t sizeMinBits(size_t cache) const {
    return static_cast<uint32_t>(std::lround(sizeMinBitsPerElement * capacities.at(cache)));
  }
  uint32_t sizeMaxBits(size_t cache) const {
    return static_cast<uint32_t>(std::lround(sizeMaxBitsPerElement * capacities.at(cache)));
  }

  void validate() const {
    if (numCaches < 1) throw ConfigError("numCaches must be >= 1");
    if (capacities.size() != static_cast<size_t>(numCaches))
      throw ConfigError("capacities must list exactly numCaches values");
    if (accessCosts.size() != static_cast<size_t>(numCaches))
      throw ConfigError("accessCosts must list exactly numCaches values");
    for (size_t c : capacities)
      if (c < 1) throw ConfigError("capacities entries must be >= 1");
    double maxCost = 0.0;
    for (double c : accessCosts) {
      if (c <= 0.0) throw ConfigError("accessCosts entries must be > 0");
      maxCost = std::max(maxCost, c);
    }
    if (missPenalty <= maxCost) throw ConfigError("missPenalty must exceed the max access cost");
    if (bitsPerElement <= 0.0) throw ConfigError("bitsPerElement must be > 0");
    if (sizeMinBitsPerElement <= 0.0 || sizeMaxBitsPerElement < sizeMinBitsPerElement)
      throw ConfigError("size bounds must satisfy 0 < sizeMin <= sizeMax");
    if (bitsPerElement < sizeMinBitsPerElement || bitsPerElement > sizeMaxBitsPerElement)
      throw ConfigError("bitsPerElement must lie within [sizeMin, sizeMax] bits per element");
    if (budget <= 0.0) throw ConfigError("budget must be > 0");
    if (minInterval < 1) throw ConfigError("minInterval must be >= 1");
    if (syncFactor < 1) throw ConfigError("syncFactor must be >= 1");
    if (clampFactor < 1) throw ConfigError("clampFactor must be >= 1");
    auto prob = [](double v, const char* name) {
      if (v < 0.0 || v > 1.0) throw ConfigError(std::string(name) + " must be in [0, 1]");
    };
    prob(deltaMrone, "deltaMrone");
    prob(deltaMrzero, "deltaMrzero");
    prob(mroneThreshold, "mroneThreshold");
    prob(mrzeroThreshold, "mrzeroThreshold");
    prob(mroneInit, "mroneInit");
    prob(mrzeroInit, "mrzeroInit");
    prob(deltaLossProbability, "deltaLossProbability");
  }
};

namespace detail {

inline std::vector<std::string> splitCsv(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? std::string() : item.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace detail

// Parses a key = value config file. Unknown keys and malformed values are
// reported with their line number.
inline SystemConfig parseConfig(std::istream& in, const std::string& sourceName) {
  SystemConfig cfg;
  cfg.capacities.clear();
  cfg.accessCosts.clear();
  std::string line;
  int lineNo = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(sourceName + ":" + std::to_string(lineNo) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineNo;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r\n") != std::string::npos)
        fail("expected 'key = value'");
      continue;
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r\n");
      return s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key");
    if (value.empty()) fail("missing value for '" + key + "'");
    auto asDouble = [&](const std::string& v) {
      try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
      } catch (const std::exception&) {
        fail("invalid number '" + v + "' for '" + key + "'");
        return 0.0;
      }
    };
    auto asUint = [&](const std::string& v) {
      try {
        size_t used = 0;
        unsigned long long u = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return static_cast<uint64_t>(u);
      } catch (const std::exception&) {
        fail("invalid integer '" + v + "' for '" + key + "'");
        return static_cast<uint64_t>(0);
      }
    };

    if (key == "numCaches") cfg.numCaches = static_cast<int>(asUint(value));
    else if (key == "capacities") {
      for (const auto& v : detail::splitCsv(value)) cfg.capacities.push_back(static_cast<size_t>(asUint(v)));
    } else if (key == "accessCosts") {
      for (const auto& v : detail::splitCsv(value)) cfg.accessCosts.push_back(asDouble(v));
    } else if (key == "missPenalty") cfg.missPenalty = asDouble(value);
    else if (key == "bitsPerElement") cfg.bitsPerElement = asDouble(value);
    else if (key == "sizeMinBitsPerElement") cfg.sizeMinBitsPerElement = asDouble(value);
    else if (key == "sizeMaxBitsPerElement") cfg.sizeMaxBitsPerElement = asDouble(value);
    else if (key == "budget") cfg.budget = asDouble(value);
    else if (key == "minInterval") cfg.minInterval = static_cast<uint32_t>(asUint(value));
    else if (key == "syncFactor") cfg.syncFactor = static_cast<uint32_t>(asUint(value));
    else if (key == "clampFactor") cfg.clampFactor = static_cast<uint32_t>(asUint(value));
    else if (key == "deltaMrone") cfg.deltaMrone = asDouble(value);
    else if (key == "deltaMrzero") cfg.deltaMrzero = asDouble(value);
    else if (key == "mroneThreshold") cfg.mroneThreshold = asDouble(value);
    else if (key == "mrzeroThreshold") cfg.mrzeroThreshold = asDouble(value);
    else if (key == "mroneInit") cfg.mroneInit = asDouble(value);
    else if (key == "mrzeroInit") cfg.mrzeroInit = asDouble(value);
    else if (key == "deltaLossProbability") cfg.deltaLossProbability = asDouble(value);
    else if (key == "rngSeed") cfg.rngSeed = asUint(value);
    else if (key == "selection") {
      if (value == "exhaustive") cfg.selection = SelectionAlgorithm::exhaustive;
      else if (value == "greedy") cfg.selection = SelectionAlgorithm::greedy;
      else fail("selection must be 'exhaustive' or 'greedy'");
    } else if (key == "policy") {
      if (value == "salsa2") cfg.policy = Policy::salsa2;
      else if (value == "static") cfg.policy = Policy::staticBaseline;
      else fail("policy must be 'salsa2' or 'static'");
    } else fail("unknown key '" + key + "'");
  }
  if (cfg.capacities.empty()) throw ConfigError(sourceName + ": missing required key 'capacities'");
  if (cfg.accessCosts.empty()) throw ConfigError(sourceName + ": missing required key 'accessCosts'");
  cfg.validate();
  return cfg;
}

inline SystemConfig parseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parseConfig(in, path);
}

inline std::string serializeConfig(const SystemConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "numCaches = " << cfg.numCaches << "\n";
  out << "capacities = ";
  for (size_t i = 0; i < cfg.capacities.size(); ++i) out << (i ? "," : "") << cfg.capacities[i];
  out << "\naccessCosts = ";
  for (size_t i = 0; i < cfg.accessCosts.size(); ++i) out << (i ? "," : "") << cfg.accessCosts[i];
  out << "\nmissPenalty = " << cfg.missPenalty << "\n";
  out << "bitsPerElement = " << cfg.bitsPerElement << "\n";
  out << "sizeMinBitsPerElement = " << cfg.sizeMinBitsPerElement << "\n";
  out << "sizeMaxBitsPerElement = " << cfg.sizeMaxBitsPerElement << "\n";
  out << "budget = " << cfg.budget << "\n";
  out << "minInterval = " << cfg.minInterval << "\n";
  out << "syncFactor = " << cfg.syncFactor << "\n";
  out << "clampFactor = " << cfg.clampFactor << "\n";
  out << "deltaMrone = " << cfg.deltaMrone << "\n";
  out << "deltaMrzero = " << cfg.deltaMrzero << "\n";
  out << "mroneThreshold = " << cfg.mroneThreshold << "\n";
  out << "mrzeroThreshold = " << cfg.mrzeroThreshold << "\n";
  out << "mroneInit = " << cfg.mroneInit << "\n";
  out << "mrzeroInit = " << cfg.mrzeroInit << "\n";
  out << "deltaLossProbability = " << cfg.deltaLossProbability << "\n";
  out << "rngSeed = " << cfg.rngSeed << "\n";
  out << "selection = " << (cfg.selection == SelectionAlgorithm::exhaustive ? "exhaustive" : "greedy") << "\n";
  out << "policy = " << (cfg.policy == Policy::salsa2 ? "salsa2" : "static") << "\n";
  return out.str();
}

}  // namespace salsa

#endif  // SALSA_CONFIG_HPP_
