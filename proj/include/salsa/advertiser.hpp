#ifndef SALSA_ADVERTISER_HPP_
#define SALSA_ADVERTISER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "salsa/estimator.hpp"
#include "salsa/indicator.hpp"
#include "salsa/wire.hpp"

namespace salsa {

// True iff operating in delta mode over one synchronization period is
// expected to cost fewer bits than staying in full-indicator mode:
//   R * D * ceil(log2 I) + I  <  R * I
inline bool xmtDeltaIsCheaper(uint32_t sizeBits, uint64_t diff, uint32_t syncFactor) {
  if (sizeBits < 2) throw std::invalid_argument("xmtDeltaIsCheaper: sizeBits must be >= 2");
  uint64_t lhs = static_cast<uint64_t>(syncFactor) * diff * ceilLog2(sizeBits) + sizeBits;
  uint64_t rhs = static_cast<uint64_t>(syncFactor) * sizeBits;
  return lhs < rhs;
}

// Estimated bits-per-insertion of running delta mode with a candidate
// indicator of candidateSize bits:
//   (I_j / (I * u_min)) * D * ceil(log2 I_j)  +  I_j / (R * u)
inline double estimatedBw(uint32_t candidateSize, uint32_t currentSize, double avgDeltaDiff,
                          uint32_t minInterval, uint32_t syncFactor, uint32_t updateInterval) {
  if (candidateSize < 2 || currentSize < 2)
    throw std::invalid_argument("estimatedBw: indicator sizes must be >= 2");
  if (minInterval < 1 || syncFactor < 1 || updateInterval < 1)
    throw std::invalid_argument("estimatedBw: intervals must be >= 1");
  double deltaTerm = (static_cast<double>(candidateSize) /
                      (static_cast<double>(currentSize) * minInterval)) *
                     avgDeltaDiff * ceilLog2(candidateSize);
  double syncTerm = static_cast<double>(candidateSize) /
                    (static_cast<double>(syncFactor) * updateInterval);
  return deltaTerm + syncTerm;
}

enum class AdvertiserMode { full, delta };
enum class AdvertisementKind { full, delta };

struct Advertisement {
  AdvertisementKind kind;
  int cacheId = -1;
  Indicator fullIndicator;   // set for kind == full
  DeltaUpdate delta;         // set for kind == delta
  std::vector<uint8_t> wire;
  uint64_t payloadBits = 0;  // budget-facing portion of the message
  uint64_t framingBits = 0;  // header + padding, reported but not budgeted
};

struct BitsLedger {
  uint64_t fullBits = 0;
  uint64_t deltaPayloadBits = 0;
  uint64_t framingBits = 0;
  uint64_t fullAdCount = 0;
  uint64_t deltaAdCount = 0;

  uint64_t budgetFacingBits() const { return fullBits + deltaPayloadBits; }
  uint64_t advertisementCount() const { return fullAdCount + deltaAdCount; }
};

struct AdvertiserParams {
  uint32_t initialSizeBits = 0;
  uint32_t sizeMin = 0;
  uint32_t sizeMax = 0;
  double budget = 140.0;       // B, bits per insertion
  uint32_t minInterval = 1;    // u_min
  uint32_t syncFactor = 10;    // R
  uint32_t clampFactor = 2;    // C
  double mroneThreshold = 0.01;
  double mrzeroThreshold = 0.88;
  size_t cacheCapacity = 0;    // items; sets bits-per-element for hashing
  uint64_t hashSeed = 0;
  bool adaptive = true;        // false: fixed size/interval, full ads only
  uint32_t fixedInterval = 0;  // non-adaptive only; 0 derives floor(I/B)
};

// Lazily materializes cache contents; only consulted on a resize.
using ItemsProvider = std::function<std::vector<uint64_t>()>;

// Per-cache advertisement state machine. Tracks the advertised ("stale")
// indicator, maintains the would-be fresh indicator incrementally through
// per-bit reference counts (equivalent to rebuilding from cache contents,
// since a Bloom bit is set iff some present item hashes to it), and decides
// when to advertise, at what size, and in which mode.
class Advertiser {
 public:
  Advertiser(int cacheId, const AdvertiserParams& p, std::span<const uint64_t> initialItems)
      : cacheId_(cacheId), params_(p) {
    if (p.sizeMin < 2 || p.sizeMax < p.sizeMin)
      throw std::invalid_argument("Advertiser: invalid [sizeMin, sizeMax]");
    if (p.initialSizeBits < p.sizeMin || p.initialSizeBits > p.sizeMax)
      throw std::invalid_argument("Advertiser: initialSizeBits outside [sizeMin, sizeMax]");
    if (p.cacheCapacity < 1) throw std::invalid_argument("Advertiser: cacheCapacity must be >= 1");
    sizeBits_ = p.initialSizeBits;
    rebuild(initialItems);
    fullInterval_ = derivedInterval(sizeBits_);
    updateInterval_ = (!p.adaptive && p.fixedInterval > 0) ? p.fixedInterval : fullInterval_;
    buildCandidateSizes();
    staleIndicator_ = freshIndicator_;
    currentDiff_ = 0;
  }

  AdvertiserMode mode() const { return mode_; }
  uint32_t sizeBits() const { return sizeBits_; }
  uint32_t updateInterval() const { return updateInterval_; }
  // Bandwidth-derived interval floor(I/B); equals updateInterval in full
  // mode and paces the synchronization period in delta mode.
  uint32_t fullInterval() const { return fullInterval_; }
  uint64_t insCnt() const { return insCnt_; }
  uint64_t periodInsCnt() const { return periodInsCnt_; }
  uint64_t currentDiff() const { return currentDiff_; }
  const Indicator& staleIndicator() const { return staleIndicator_; }
  const Indicator& freshIndicator() const { return freshIndicator_; }
  const BitsLedger& ledger() const { return ledger_; }
  const std::vector<uint32_t>& candidateSizes() const { return candidateSizes_; }

  // Keep the fresh view in sync with cache mutations.
  void noteInsert(uint64_t key) { adjust(key, +1); }
  void noteEvict(uint64_t key) { adjust(key, -1); }

  // Run after the client reported this access's positive-indication count
  // and the estimator was updated. Full mode only: scale on threshold
  // breach, then advertise fresh.
  std::optional<Advertisement> onAccess(size_t kPos, ExclusionEstimates& est,
                                        const ItemsProvider& items) {
    if (!params_.adaptive || mode_ != AdvertiserMode::full) return std::nullopt;
    if (insCnt_ <= updateInterval_) return std::nullopt;
    if (est.mrone(kPos) > params_.mroneThreshold) {
      resize(std::min<uint32_t>(static_cast<uint32_t>(std::lround(1.1 * sizeBits_)), params_.sizeMax),
             items, est);
      return advertiseFullIndicator(est);
    }
    if (est.mrzero(kPos) < params_.mrzeroThreshold) {
      resize(std::max<uint32_t>(static_cast<uint32_t>(std::lround(sizeBits_ / 1.1)), params_.sizeMin),
             items, est);
      return advertiseFullIndicator(est);
    }
    return std::nullopt;
  }

  // Run after every insertion of a new item, with noteInsert/noteEvict
  // already applied for it.
  std::optional<Advertisement> onInsert(ExclusionEstimates& est, const ItemsProvider& items) {
    ++insCnt_;
    ++periodInsCnt_;
    if (!params_.adaptive) {
      if (insCnt_ >= updateInterval_) return advertiseFullIndicator(est);
      return std::nullopt;
    }
    if (mode_ == AdvertiserMode::full) return onInsertFull(est);
    return onInsertDelta(est, items);
  }

  // Advertise the current contents in full, at the current size. Resets the
  // insertion counter and the estimator's staleness counters.
  Advertisement advertiseFullIndicator(ExclusionEstimates& est) {
    Advertisement ad;
    ad.kind = AdvertisementKind::full;
    ad.cacheId = cacheId_;
    ad.fullIndicator = freshIndicator_;
    ad.wire = encodeFull(freshIndicator_);
    ad.payloadBits = sizeBits_;
    ad.framingBits = ad.wire.size() * 8 - sizeBits_;
    ledger_.fullBits += ad.payloadBits;
    ledger_.framingBits += ad.framingBits;
    ledger_.fullAdCount += 1;
    staleIndicator_ = freshIndicator_;
    currentDiff_ = 0;
    insCnt_ = 0;
    est.resetStalenessCounters();
    return ad;
  }

 private:
  static uint32_t derivedInterval(uint32_t sizeBits, double budget) {
    return std::max<uint32_t>(1, static_cast<uint32_t>(std::floor(sizeBits / budget)));
  }
  uint32_t derivedInterval(uint32_t sizeBits) const { return derivedInterval(sizeBits, params_.budget); }

  void buildCandidateSizes() {
    candidateSizes_.clear();
    double s = params_.sizeMin;
    while (static_cast<uint32_t>(std::lround(s)) < params_.sizeMax) {
      candidateSizes_.push_back(static_cast<uint32_t>(std::lround(s)));
      s *= 1.1;
    }
    candidateSizes_.push_back(params_.sizeMax);
  }

  // Rebuild the per-bit reference counts and fresh bit array from scratch
  // (construction and size changes only; the steady state is incremental).
  void rebuild(std::span<const uint64_t> items) {
    int numHashes = optimalHashCount(static_cast<double>(sizeBits_) / params_.cacheCapacity);
    freshIndicator_ = Indicator(sizeBits_, numHashes, params_.hashSeed);
    bitRefCounts_.assign(sizeBits_, 0);
    for (uint64_t key : items) {
      uint32_t pos[kMaxHashes];
      freshIndicator_.probePositions(key, {pos, static_cast<size_t>(numHashes)});
      for (int i = 0; i < numHashes; ++i) {
        if (bitRefCounts_[pos[i]]++ == 0) freshIndicator_.setBit(pos[i]);
      }
    }
  }

  void adjust(uint64_t key, int delta) {
    uint32_t pos[kMaxHashes];
    int numHashes = freshIndicator_.numHashes();
    freshIndicator_.probePositions(key, {pos, static_cast<size_t>(numHashes)});
    for (int i = 0; i < numHashes; ++i) {
      uint32_t p = pos[i];
      uint32_t before = bitRefCounts_[p];
      bitRefCounts_[p] = static_cast<uint32_t>(static_cast<int64_t>(before) + delta);
      bool wasSet = before > 0;
      bool isSet = bitRefCounts_[p] > 0;
      if (wasSet != isSet) {
        freshIndicator_.toggleBit(p);
        bool differsNow = freshIndicator_.bit(p) != staleIndicator_.bit(p);
        currentDiff_ += differsNow ? 1 : -1;
      }
    }
  }

  // A size change rebuilds from cache contents and recomputes the update
  // interval and estimator window; deltas never cross it.
  void resize(uint32_t newSizeBits, const ItemsProvider& items, ExclusionEstimates& est) {
    sizeBits_ = newSizeBits;
    std::vector<uint64_t> contents = items();
    rebuild(contents);
    fullInterval_ = derivedInterval(sizeBits_);
    if (mode_ == AdvertiserMode::full) updateInterval_ = fullInterval_;
    est.setWindowSize(static_cast<uint32_t>(std::ceil(0.1 * fullInterval_)));
    // stale array is size-mismatched until the full advertisement that
    // always follows a resize
  }

  Advertisement emitDelta(const DeltaUpdate& d) {
    Advertisement ad;
    ad.kind = AdvertisementKind::delta;
    ad.cacheId = cacheId_;
    ad.delta = d;
    ad.wire = encodeDelta(d);
    ad.payloadBits = deltaPayloadBits(d.flippedPositions.size(), d.referenceSize);
    ad.framingBits = ad.wire.size() * 8 - ad.payloadBits;
    ledger_.deltaPayloadBits += ad.payloadBits;
    ledger_.framingBits += ad.framingBits;
    ledger_.deltaAdCount += 1;
    deltaDiffSum_ += d.flippedPositions.size();
    deltaDiffCount_ += 1;
    staleIndicator_ = freshIndicator_;
    currentDiff_ = 0;
    return ad;
  }

  std::optional<Advertisement> onInsertFull(ExclusionEstimates& est) {
    // The cheaper-check runs only when insCnt is exactly the update
    // interval; more insertions only mean more changes to report.
    if (insCnt_ == updateInterval_) lastFullModeDiff_ = currentDiff_;
    if (insCnt_ == updateInterval_ && xmtDeltaIsCheaper(sizeBits_, currentDiff_, params_.syncFactor)) {
      mode_ = AdvertiserMode::delta;
      updateInterval_ = params_.minInterval;
      est.setWindowSize(static_cast<uint32_t>(std::ceil(0.1 * fullInterval_)));
      deltaDiffSum_ = 0;
      deltaDiffCount_ = 0;
      Advertisement ad = emitDelta(diffPositions(staleIndicator_, freshIndicator_));
      insCnt_ = 0;
      periodInsCnt_ = 0;
      return ad;
    }
    if (insCnt_ > static_cast<uint64_t>(params_.clampFactor) * updateInterval_) {
      return advertiseFullIndicator(est);
    }
    return std::nullopt;
  }

  std::optional<Advertisement> onInsertDelta(ExclusionEstimates& est, const ItemsProvider& items) {
    if (periodInsCnt_ >= static_cast<uint64_t>(params_.syncFactor) * fullInterval_) {
      double avgDiff = deltaDiffCount_ > 0
                           ? static_cast<double>(deltaDiffSum_) / deltaDiffCount_
                           : static_cast<double>(lastFullModeDiff_);
      if (estimatedBw(params_.sizeMin, sizeBits_, avgDiff, params_.minInterval,
                      params_.syncFactor, fullInterval_) <= params_.budget) {
        // Stay in delta mode; pick the candidate size that comes closest
        // to the budget (ties toward the smaller size).
        uint32_t best = candidateSizes_.front();
        double bestGap = std::abs(estimatedBw(best, sizeBits_, avgDiff, params_.minInterval,
                                              params_.syncFactor, fullInterval_) - params_.budget);
        for (uint32_t cand : candidateSizes_) {
          double gap = std::abs(estimatedBw(cand, sizeBits_, avgDiff, params_.minInterval,
                                            params_.syncFactor, fullInterval_) - params_.budget);
          if (gap < bestGap) {
            bestGap = gap;
            best = cand;
          }
        }
        if (best != sizeBits_) resize(best, items, est);
      } else {
        mode_ = AdvertiserMode::full;
        fullInterval_ = derivedInterval(sizeBits_);
        updateInterval_ = fullInterval_;
        est.setWindowSize(static_cast<uint32_t>(std::ceil(0.1 * fullInterval_)));
      }
      periodInsCnt_ = 0;
      deltaDiffSum_ = 0;
      deltaDiffCount_ = 0;
      return advertiseFullIndicator(est);
    }
    if (insCnt_ % params_.minInterval == 0) {
      return emitDelta(diffPositions(staleIndicator_, freshIndicator_));
    }
    return std::nullopt;
  }

  int cacheId_;
  AdvertiserParams params_;
  AdvertiserMode mode_ = AdvertiserMode::full;
  uint32_t sizeBits_ = 0;
  uint32_t updateInterval_ = 1;
  uint32_t fullInterval_ = 1;
  uint64_t insCnt_ = 0;
  uint64_t periodInsCnt_ = 0;
  uint64_t currentDiff_ = 0;
  uint64_t lastFullModeDiff_ = 0;
  uint64_t deltaDiffSum_ = 0;
  uint64_t deltaDiffCount_ = 0;
  Indicator freshIndicator_;
  Indicator staleIndicator_;
  std::vector<uint32_t> bitRefCounts_;
  std::vector<uint32_t> candidateSizes_;
  BitsLedger ledger_;
};

}  // namespace salsa

#endif  // SALSA_ADVERTISER_HPP_
