#ifndef SALSA_REPORT_HPP_
#define SALSA_REPORT_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "salsa/eval.hpp"
#include "salsa/sim.hpp"

namespace salsa {

using json = nlohmann::ordered_json;

inline json configToJson(const SystemConfig& cfg) {
  json j;
  j["numCaches"] = cfg.numCaches;
  j["capacities"] = cfg.capacities;
  j["accessCosts"] = cfg.accessCosts;
  j["missPenalty"] = cfg.missPenalty;
  j["bitsPerElement"] = cfg.bitsPerElement;
  j["sizeMinBitsPerElement"] = cfg.sizeMinBitsPerElement;
  j["sizeMaxBitsPerElement"] = cfg.sizeMaxBitsPerElement;
  j["budget"] = cfg.budget;
  j["minInterval"] = cfg.minInterval;
  j["syncFactor"] = cfg.syncFactor;
  j["clampFactor"] = cfg.clampFactor;
  j["deltaMrone"] = cfg.deltaMrone;
  j["deltaMrzero"] = cfg.deltaMrzero;
  j["mroneThreshold"] = cfg.mroneThreshold;
  j["mrzeroThreshold"] = cfg.mrzeroThreshold;
  j["mroneInit"] = cfg.mroneInit;
  j["mrzeroInit"] = cfg.mrzeroInit;
  j["deltaLossProbability"] = cfg.deltaLossProbability;
  j["rngSeed"] = cfg.rngSeed;
  j["selection"] = cfg.selection == SelectionAlgorithm::exhaustive ? "exhaustive" : "greedy";
  j["policy"] = cfg.policy == Policy::salsa2 ? "salsa2" : "static";
  return j;
}

inline json reportToJson(const SimReport& rep) {
  json j;
  j["requestCount"] = rep.requestCount;
  j["meanServiceCost"] = rep.meanServiceCost;
  j["oracleMeanServiceCost"] = rep.oracleMeanServiceCost;
  j["normalizedServiceCost"] = rep.normalizedServiceCost;
  j["bitsPerRequest"] = rep.bitsPerRequest;
  j["framingBitsPerRequest"] = rep.framingBitsPerRequest;
  j["hitCount"] = rep.hitCount;
  j["missCount"] = rep.missCount;
  j["falsePositiveCount"] = rep.falsePositiveCount;
  j["falseNegativeCount"] = rep.falseNegativeCount;
  j["speculativeAccessCount"] = rep.speculativeAccessCount;
  j["insertionCount"] = rep.insertionCount;
  j["totalBudgetBits"] = rep.totalBudgetBits;
  j["totalFramingBits"] = rep.totalFramingBits;
  j["perCache"] = json::array();
  for (const auto& pc : rep.perCache) {
    json c;
    c["fullAdCount"] = pc.fullAdCount;
    c["deltaAdCount"] = pc.deltaAdCount;
    c["fullBits"] = pc.fullBits;
    c["deltaPayloadBits"] = pc.deltaPayloadBits;
    c["framingBits"] = pc.framingBits;
    c["deltaModeFraction"] = pc.deltaModeFraction;
    c["finalSizeBits"] = pc.finalSizeBits;
    c["finalMode"] = pc.finalMode;
    j["perCache"].push_back(c);
  }
  j["config"] = configToJson(rep.config);
  return j;
}

inline std::string reportToCsv(const SimReport& rep) {
  std::ostringstream out;
  out.precision(17);
  out << "metric,value\n";
  out << "requestCount," << rep.requestCount << "\n";
  out << "meanServiceCost," << rep.meanServiceCost << "\n";
  out << "oracleMeanServiceCost," << rep.oracleMeanServiceCost << "\n";
  out << "normalizedServiceCost," << rep.normalizedServiceCost << "\n";
  out << "bitsPerRequest," << rep.bitsPerRequest << "\n";
  out << "framingBitsPerRequest," << rep.framingBitsPerRequest << "\n";
  out << "hitCount," << rep.hitCount << "\n";
  out << "missCount," << rep.missCount << "\n";
  out << "falsePositiveCount," << rep.falsePositiveCount << "\n";
  out << "falseNegativeCount," << rep.falseNegativeCount << "\n";
  out << "speculativeAccessCount," << rep.speculativeAccessCount << "\n";
  out << "insertionCount," << rep.insertionCount << "\n";
  out << "totalBudgetBits," << rep.totalBudgetBits << "\n";
  out << "totalFramingBits," << rep.totalFramingBits << "\n";
  return out.str();
}

inline std::string adLogToCsv(const std::vector<AdEvent>& log) {
  std::ostringstream out;
  out << "cacheId,kind,sizeBits,numPositions,payloadBits,framingBits,delivered,cacheInsertionCount\n";
  for (const auto& ev : log) {
    out << ev.cacheId << "," << (ev.kind == AdvertisementKind::full ? "full" : "delta") << ","
        << ev.sizeBits << "," << ev.numPositions << "," << ev.payloadBits << "," << ev.framingBits
        << "," << (ev.delivered ? 1 : 0) << "," << ev.cacheInsertionCount << "\n";
  }
  return out.str();
}

inline std::string evalRowsToCsv(const std::vector<EvalRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "request,cacheId,estMrone1,refMrone1,estMrzero0,refMrzero0\n";
  for (const auto& r : rows) {
    out << r.request << "," << r.cacheId << "," << r.estMrone1 << "," << r.refMrone1 << ","
        << r.estMrzero0 << "," << r.refMrzero0 << "\n";
  }
  return out.str();
}

inline void writeFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

}  // namespace salsa

#endif  // SALSA_REPORT_HPP_
