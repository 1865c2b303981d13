#ifndef SALSA_SIM_HPP_
#define SALSA_SIM_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "salsa/advertiser.hpp"
#include "salsa/config.hpp"
#include "salsa/estimator.hpp"
#include "salsa/hash.hpp"
#include "salsa/indicator.hpp"
#include "salsa/lru_cache.hpp"
#include "salsa/selection.hpp"

namespace salsa {

// Each missed item is inserted into max(1, floor(N/3)) distinct caches,
// chosen by hashing the key. Deterministic in (key, N).
inline std::vector<size_t> distributionPolicy(uint64_t key, size_t numCaches) {
  if (numCaches < 1) throw std::invalid_argument("distributionPolicy: numCaches must be >= 1");
  size_t want = std::max<size_t>(1, numCaches / 3);
  std::vector<size_t> out;
  std::vector<bool> taken(numCaches, false);
  uint64_t counter = 0;
  while (out.size() < want) {
    size_t idx = static_cast<size_t>(hashKey(key, 0x5eedULL + counter) % numCaches);
    ++counter;
    if (!taken[idx]) {
      taken[idx] = true;
      out.push_back(idx);
    }
  }
  return out;
}

struct PerCacheReport {
  uint64_t fullAdCount = 0;
  uint64_t deltaAdCount = 0;
  uint64_t fullBits = 0;
  uint64_t deltaPayloadBits = 0;
  uint64_t framingBits = 0;
  double deltaModeFraction = 0.0;  // fraction of insertions handled in delta mode
  uint32_t finalSizeBits = 0;
  std::string finalMode;
};

struct SimReport {
  uint64_t requestCount = 0;
  double meanServiceCost = 0.0;
  double oracleMeanServiceCost = 0.0;
  double normalizedServiceCost = 0.0;
  double bitsPerRequest = 0.0;         // budget-facing: full sizes + delta payloads
  double framingBitsPerRequest = 0.0;
  uint64_t hitCount = 0;
  uint64_t missCount = 0;
  uint64_t falsePositiveCount = 0;  // accessed on a positive indication, absent
  uint64_t falseNegativeCount = 0;  // negative indication while actually present
  uint64_t speculativeAccessCount = 0;
  uint64_t insertionCount = 0;
  uint64_t totalBudgetBits = 0;
  uint64_t totalFramingBits = 0;
  std::vector<PerCacheReport> perCache;
  SystemConfig config;
};

// Log row per advertisement event; the acceptance suite re-derives the
// ledger from this independently.
struct AdEvent {
  int cacheId = -1;
  AdvertisementKind kind = AdvertisementKind::full;
  uint32_t sizeBits = 0;       // indicator size at emission
  uint64_t numPositions = 0;   // delta only
  uint64_t payloadBits = 0;
  uint64_t framingBits = 0;
  bool delivered = true;
  uint64_t cacheInsertionCount = 0;  // insertions at this cache so far
};

// Deterministic single-threaded event loop binding caches, estimators,
// advertisers, and one logical client, plus a perfect-information replica
// evaluated on its own cache instances.
class Simulator {
 public:
  explicit Simulator(SystemConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    rng_.seed(cfg_.rngSeed);
    size_t n = static_cast<size_t>(cfg_.numCaches);
    for (size_t j = 0; j < n; ++j) {
      nodes_.emplace_back(cfg_, j);
      pifCaches_.emplace_back(cfg_.capacities[j]);
    }
    // Advertise the initial (empty) indicators so clients start with a view.
    for (size_t j = 0; j < n; ++j) {
      deliver(j, nodes_[j].adv.advertiseFullIndicator(nodes_[j].est));
    }
  }

  using AdObserver = std::function<void(const AdEvent&)>;
  void setAdObserver(AdObserver obs) { observer_ = std::move(obs); }
  bool keepEventLog = false;

  const std::vector<AdEvent>& adLog() const { return adLog_; }
  const Indicator& clientCopy(size_t j) const { return nodes_[j].clientCopy; }
  const Advertiser& advertiser(size_t j) const { return nodes_[j].adv; }
  const LruCache& cache(size_t j) const { return nodes_[j].cache; }
  const ExclusionEstimates& estimates(size_t j) const { return nodes_[j].est; }

  struct RequestRecord {
    std::vector<size_t> accessed;
    double realizedCost = 0.0;
    double pifCost = 0.0;
    bool hit = false;
  };

  RequestRecord processRequest(uint64_t key) {
    size_t n = nodes_.size();
    RequestRecord rec;

    // 1-2. Indications from the client's copies; miss probabilities
    // conditioned on the positive-indication count.
    SelectionInstance inst;
    inst.accessCosts = cfg_.accessCosts;
    inst.missPenalty = cfg_.missPenalty;
    inst.indications.resize(n);
    size_t k = 0;
    for (size_t j = 0; j < n; ++j) {
      inst.indications[j] = nodes_[j].clientCopy.query(key) ? 1 : 0;
      k += inst.indications[j];
    }
    std::vector<std::vector<double>> mroneTables, mrzeroTables;
    mroneTables.reserve(n);
    mrzeroTables.reserve(n);
    for (size_t j = 0; j < n; ++j) {
      mroneTables.push_back(nodes_[j].est.mroneTable());
      mrzeroTables.push_back(nodes_[j].est.mrzeroTable());
    }
    inst.missProbs = assignMissProbs(inst.indications, mroneTables, mrzeroTables);

    // 3. Subset selection.
    rec.accessed = cfg_.selection == SelectionAlgorithm::exhaustive ? selectExhaustive(inst)
                                                                    : selectGreedy(inst);

    // Ground-truth bookkeeping before any mutation.
    for (size_t j = 0; j < n; ++j) {
      if (!inst.indications[j] && nodes_[j].cache.contains(key)) ++falseNegatives_;
    }

    // 4-5. Charge access costs, perform the lookups.
    double cost = 0.0;
    std::vector<uint8_t> hitAt(n, 0);
    bool anyHit = false;
    for (size_t j : rec.accessed) {
      cost += cfg_.accessCosts[j];
      bool h = nodes_[j].cache.lookup(key);
      hitAt[j] = h;
      anyHit = anyHit || h;
      if (inst.indications[j] && !h) ++falsePositives_;
      if (!inst.indications[j]) ++speculativeAccesses_;
    }
    rec.hit = anyHit;
    if (anyHit) ++hits_; else ++misses_;

    if (!anyHit) {
      cost += cfg_.missPenalty;
      for (size_t j : distributionPolicy(key, n)) insertIntoCache(j, key);
    }
    rec.realizedCost = cost;

    // 6. Accessed caches record the outcome and run the access-triggered
    // advertisement step.
    for (size_t j : rec.accessed) {
      auto& node = nodes_[j];
      if (inst.indications[j]) node.est.recordRegularAccess(k, !hitAt[j]);
      else node.est.recordSpeculativeAccess(k, !hitAt[j]);
      auto ad = node.adv.onAccess(k, node.est, [&node] { return node.cache.items(); });
      if (ad) deliver(j, *ad);
    }

    // Perfect-information replica: cheapest holder or a miss, on its own
    // cache instances.
    rec.pifCost = cfg_.missPenalty;
    size_t cheapest = n;
    for (size_t j = 0; j < n; ++j) {
      if (pifCaches_[j].contains(key) &&
          (cheapest == n || cfg_.accessCosts[j] < cfg_.accessCosts[cheapest])) {
        cheapest = j;
      }
    }
    if (cheapest < n) {
      pifCaches_[cheapest].lookup(key);
      rec.pifCost = cfg_.accessCosts[cheapest];
    } else {
      for (size_t j : distributionPolicy(key, n)) {
        if (!pifCaches_[j].contains(key)) pifCaches_[j].insert(key);
      }
    }
    return rec;
  }

  SimReport run(std::span<const uint64_t> trace) {
    if (trace.empty()) throw ConfigError("trace must be non-empty");
    double costSum = 0.0;
    double pifSum = 0.0;
    for (uint64_t key : trace) {
      RequestRecord rec = processRequest(key);
      costSum += rec.realizedCost;
      pifSum += rec.pifCost;
    }
    SimReport rep;
    rep.requestCount = trace.size();
    rep.meanServiceCost = costSum / trace.size();
    rep.oracleMeanServiceCost = pifSum / trace.size();
    rep.normalizedServiceCost = rep.meanServiceCost / rep.oracleMeanServiceCost;
    rep.hitCount = hits_;
    rep.missCount = misses_;
    rep.falsePositiveCount = falsePositives_;
    rep.falseNegativeCount = falseNegatives_;
    rep.speculativeAccessCount = speculativeAccesses_;
    uint64_t budgetBits = 0, framingBits = 0;
    for (auto& node : nodes_) {
      const BitsLedger& led = node.adv.ledger();
      budgetBits += led.budgetFacingBits();
      framingBits += led.framingBits;
      PerCacheReport pc;
      pc.fullAdCount = led.fullAdCount;
      pc.deltaAdCount = led.deltaAdCount;
      pc.fullBits = led.fullBits;
      pc.deltaPayloadBits = led.deltaPayloadBits;
      pc.framingBits = led.framingBits;
      pc.deltaModeFraction = node.totalInsertions
                                 ? static_cast<double>(node.deltaModeInsertions) / node.totalInsertions
                                 : 0.0;
      pc.finalSizeBits = node.adv.sizeBits();
      pc.finalMode = node.adv.mode() == AdvertiserMode::delta ? "delta" : "full";
      rep.perCache.push_back(pc);
      rep.insertionCount += node.cache.insertionCount();
    }
    rep.totalBudgetBits = budgetBits;
    rep.totalFramingBits = framingBits;
    rep.bitsPerRequest = static_cast<double>(budgetBits) / trace.size();
    rep.framingBitsPerRequest = static_cast<double>(framingBits) / trace.size();
    rep.config = cfg_;
    return rep;
  }

 private:
  struct CacheNode {
    CacheNode(const SystemConfig& cfg, size_t j)
        : cache(cfg.capacities[j]),
          est(cfg.numCaches,
              static_cast<uint32_t>(std::ceil(
                  0.1 * std::max<uint32_t>(1, static_cast<uint32_t>(std::floor(
                                                  cfg.initialSizeBits(j) / cfg.budget))))),
              EstimatorParams{cfg.deltaMrone, cfg.deltaMrzero, cfg.mroneInit, cfg.mrzeroInit}),
          adv(static_cast<int>(j), makeParams(cfg, j), std::vector<uint64_t>{}) {}

    static AdvertiserParams makeParams(const SystemConfig& cfg, size_t j) {
      AdvertiserParams p;
      p.initialSizeBits = cfg.initialSizeBits(j);
      p.sizeMin = cfg.sizeMinBits(j);
      p.sizeMax = cfg.sizeMaxBits(j);
      p.budget = cfg.budget;
      p.minInterval = cfg.minInterval;
      p.syncFactor = cfg.syncFactor;
      p.clampFactor = cfg.clampFactor;
      p.mroneThreshold = cfg.mroneThreshold;
      p.mrzeroThreshold = cfg.mrzeroThreshold;
      p.cacheCapacity = cfg.capacities[j];
      p.hashSeed = mix64(cfg.rngSeed ^ (0x1000 + j));
      p.adaptive = cfg.policy == Policy::salsa2;
      return p;
    }

    LruCache cache;
    ExclusionEstimates est;
    Advertiser adv;
    Indicator clientCopy;
    uint64_t epochInsertions = 0;
    uint64_t deltaModeInsertions = 0;
    uint64_t totalInsertions = 0;
  };

  void insertIntoCache(size_t j, uint64_t key) {
    auto& node = nodes_[j];
    if (node.cache.contains(key)) return;  // already stocked by an unselected holder
    auto evicted = node.cache.insert(key);
    node.adv.noteInsert(key);
    if (evicted) node.adv.noteEvict(*evicted);
    node.totalInsertions += 1;
    if (node.adv.mode() == AdvertiserMode::delta) node.deltaModeInsertions += 1;
    // Clamp epoch: once per 10x the bandwidth-derived interval.
    node.epochInsertions += 1;
    if (node.epochInsertions >= 10ull * node.adv.fullInterval()) {
      node.est.clampEpoch();
      node.epochInsertions = 0;
    }
    auto ad = node.adv.onInsert(node.est, [&node] { return node.cache.items(); });
    if (ad) deliver(j, *ad);
  }

  void deliver(size_t j, const Advertisement& ad) {
    auto& node = nodes_[j];
    bool delivered = true;
    if (ad.kind == AdvertisementKind::delta) {
      bool forcedDrop = cfg_.forcedDeltaDropIndex >= 0 &&
                        deltaEventCounter_ == static_cast<uint64_t>(cfg_.forcedDeltaDropIndex);
      bool randomDrop = cfg_.deltaLossProbability > 0.0 &&
                        lossDist_(rng_) < cfg_.deltaLossProbability;
      ++deltaEventCounter_;
      delivered = !(forcedDrop || randomDrop);
      if (delivered) applyDelta(node.clientCopy, ad.delta);
    } else {
      node.clientCopy = ad.fullIndicator;
    }
    AdEvent ev;
    ev.cacheId = static_cast<int>(j);
    ev.kind = ad.kind;
    ev.sizeBits = ad.kind == AdvertisementKind::full ? ad.fullIndicator.sizeBits()
                                                     : ad.delta.referenceSize;
    ev.numPositions = ad.kind == AdvertisementKind::delta ? ad.delta.flippedPositions.size() : 0;
    ev.payloadBits = ad.payloadBits;
    ev.framingBits = ad.framingBits;
    ev.delivered = delivered;
    ev.cacheInsertionCount = node.cache.insertionCount();
    if (keepEventLog) adLog_.push_back(ev);
    if (observer_) observer_(ev);
  }

  SystemConfig cfg_;
  std::vector<CacheNode> nodes_;
  std::vector<LruCache> pifCaches_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> lossDist_{0.0, 1.0};
  uint64_t deltaEventCounter_ = 0;
  uint64_t hits_ = 0;
  uint64_t misses_ = 0;
  uint64_t falsePositives_ = 0;
  uint64_t falseNegatives_ = 0;
  uint64_t speculativeAccesses_ = 0;
  std::vector<AdEvent> adLog_;
  AdObserver observer_;
};

inline SimReport runSimulation(const SystemConfig& cfg, std::span<const uint64_t> trace) {
  Simulator sim(cfg);
  return sim.run(trace);
}

}  // namespace salsa

#endif  // SALSA_SIM_HPP_
