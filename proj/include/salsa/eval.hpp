#ifndef SALSA_EVAL_HPP_
#define SALSA_EVAL_HPP_

#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <vector>

#include "salsa/advertiser.hpp"
#include "salsa/estimator.hpp"
#include "salsa/hash.hpp"
#include "salsa/lru_cache.hpp"
#include "salsa/sim.hpp"

namespace salsa {

// Estimator-evaluation testbed: the client accesses every cache with a
// positive indication plus one cache picked u.a.r. among those with a
// negative indication (whenever one exists). Advertisement is static: a
// fresh indicator once per fixed insertion interval. Alongside the EWMA
// estimator runs a ground-truth reference that recomputes the exclusion
// probabilities from full knowledge once per fixed request window.
struct EvalConfig {
  int numCaches = 3;
  size_t capacity = 16384;
  uint32_t advertInterval = 3200;  // insertions per full advertisement
  double bitsPerElement = 14.0;
  uint32_t windowRequests = 320;   // ground-truth recomputation period
  EstimatorParams estimator;       // defaults per the standard parameter set
  uint64_t rngSeed = 1;
};

struct EvalRow {
  uint64_t request = 0;
  int cacheId = -1;
  double estMrone1 = 0.0;
  double refMrone1 = 0.0;
  double estMrzero0 = 0.0;
  double refMrzero0 = 0.0;
};

inline std::vector<EvalRow> runEstimatorEvaluation(const EvalConfig& cfg,
                                                   std::span<const uint64_t> trace) {
  size_t n = static_cast<size_t>(cfg.numCaches);
  uint32_t sizeBits = static_cast<uint32_t>(cfg.bitsPerElement * cfg.capacity);
  uint32_t window = std::max<uint32_t>(1, cfg.advertInterval / 10);

  std::vector<LruCache> caches;
  std::vector<ExclusionEstimates> ests;
  std::vector<Advertiser> advs;
  std::vector<Indicator> clientCopies;
  for (size_t j = 0; j < n; ++j) {
    caches.emplace_back(cfg.capacity);
    ests.emplace_back(cfg.numCaches, window, cfg.estimator);
    AdvertiserParams p;
    p.initialSizeBits = sizeBits;
    p.sizeMin = sizeBits;
    p.sizeMax = sizeBits;
    p.budget = 140.0;  // unused with a fixed interval
    p.cacheCapacity = cfg.capacity;
    p.hashSeed = mix64(cfg.rngSeed ^ (0x2000 + j));
    p.adaptive = false;
    p.fixedInterval = cfg.advertInterval;
    advs.emplace_back(static_cast<int>(j), p, std::vector<uint64_t>{});
    clientCopies.push_back(advs.back().advertiseFullIndicator(ests.back()).fullIndicator);
  }

  // Ground-truth tables, initialized like the estimator's.
  std::vector<std::vector<double>> refMrone(n, std::vector<double>(n + 1, cfg.estimator.mroneInit));
  std::vector<std::vector<double>> refMrzero(n, std::vector<double>(n + 1, cfg.estimator.mrzeroInit));

  // Window of per-request ground truth: (k, per cache: indication, absent).
  struct Observation {
    size_t k;
    std::vector<uint8_t> indications;
    std::vector<uint8_t> absent;
  };
  std::deque<Observation> windowObs;

  std::mt19937_64 rng(cfg.rngSeed);
  std::vector<EvalRow> rows;

  for (uint64_t req = 0; req < trace.size(); ++req) {
    uint64_t key = trace[req];
    Observation obs;
    obs.indications.resize(n);
    obs.absent.resize(n);
    size_t k = 0;
    std::vector<size_t> negatives;
    for (size_t j = 0; j < n; ++j) {
      obs.indications[j] = clientCopies[j].query(key) ? 1 : 0;
      k += obs.indications[j];
      obs.absent[j] = caches[j].contains(key) ? 0 : 1;
      if (!obs.indications[j]) negatives.push_back(j);
    }
    obs.k = k;
    windowObs.push_back(obs);
    if (windowObs.size() > cfg.windowRequests) windowObs.pop_front();

    std::vector<size_t> accessed;
    for (size_t j = 0; j < n; ++j)
      if (obs.indications[j]) accessed.push_back(j);
    if (!negatives.empty()) {
      std::uniform_int_distribution<size_t> pick(0, negatives.size() - 1);
      accessed.push_back(negatives[pick(rng)]);
    }

    bool anyHit = false;
    for (size_t j : accessed) {
      bool h = caches[j].lookup(key);
      anyHit = anyHit || h;
      if (obs.indications[j]) ests[j].recordRegularAccess(k, !h);
      else ests[j].recordSpeculativeAccess(k, !h);
    }

    if (!anyHit) {
      size_t target = distributionPolicy(key, n)[0];
      if (!caches[target].contains(key)) {
        auto evicted = caches[target].insert(key);
        advs[target].noteInsert(key);
        if (evicted) advs[target].noteEvict(*evicted);
        auto ad = advs[target].onInsert(ests[target], [&] { return caches[target].items(); });
        if (ad) clientCopies[target] = ad->fullIndicator;
      }
    }

    // Ground-truth recomputation over the last window; cells without
    // observations keep their previous value.
    if ((req + 1) % cfg.windowRequests == 0) {
      for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i <= n; ++i) {
          uint64_t posCnt = 0, posAbs = 0, negCnt = 0, negAbs = 0;
          for (const auto& o : windowObs) {
            if (o.k != i) continue;
            if (o.indications[j]) {
              ++posCnt;
              posAbs += o.absent[j];
            } else {
              ++negCnt;
              negAbs += o.absent[j];
            }
          }
          if (posCnt > 0) refMrone[j][i] = static_cast<double>(posAbs) / posCnt;
          if (negCnt > 0) refMrzero[j][i] = static_cast<double>(negAbs) / negCnt;
        }
        EvalRow row;
        row.request = req + 1;
        row.cacheId = static_cast<int>(j);
        row.estMrone1 = ests[j].mrone(1);
        row.refMrone1 = refMrone[j][1];
        row.estMrzero0 = ests[j].mrzero(0);
        row.refMrzero0 = refMrzero[j][0];
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace salsa

#endif  // SALSA_EVAL_HPP_
