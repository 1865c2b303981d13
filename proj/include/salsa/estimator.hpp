#ifndef SALSA_ESTIMATOR_HPP_
#define SALSA_ESTIMATOR_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace salsa {

struct EstimatorParams {
  double deltaMrone = 0.5;    // smoothing of the positive exclusion EWMA
  double deltaMrzero = 0.25;  // smoothing of the negative exclusion EWMA
  double mroneInit = 0.001;
  double mrzeroInit = 0.08;
};

// Per-cache exclusion-probability estimates, one cell per possible number
// of positive indications (0..numCaches). mrone[i] estimates
// P(absent | positive indication, i positive indications total); mrzero[i]
// the analogue for a negative indication. Estimates update by a windowed
// EWMA over access outcomes reported by clients.
class ExclusionEstimates {
 public:
  ExclusionEstimates(int numCaches, uint32_t windowSize, const EstimatorParams& p)
      : params_(p),
        windowSize_(std::max<uint32_t>(1, windowSize)),
        mrone_(numCaches + 1, p.mroneInit),
        mrzero_(numCaches + 1, p.mrzeroInit),
        regAccsCnt_(numCaches + 1, 0),
        fpCnt_(numCaches + 1, 0),
        specAccsCnt_(numCaches + 1, 0),
        tnCnt_(numCaches + 1, 0) {}

  double mrone(size_t i) const { return mrone_.at(i); }
  double mrzero(size_t i) const { return mrzero_.at(i); }
  const std::vector<double>& mroneTable() const { return mrone_; }
  const std::vector<double>& mrzeroTable() const { return mrzero_; }
  uint32_t windowSize() const { return windowSize_; }
  uint32_t regAccsCnt(size_t i) const { return regAccsCnt_.at(i); }
  uint32_t fpCnt(size_t i) const { return fpCnt_.at(i); }
  uint32_t specAccsCnt(size_t i) const { return specAccsCnt_.at(i); }
  uint32_t tnCnt(size_t i) const { return tnCnt_.at(i); }

  // Access upon a positive indication; a miss there is a false positive.
  void recordRegularAccess(size_t i, bool wasMiss) {
    checkIndex(i);
    regAccsCnt_[i] += 1;
    if (wasMiss) fpCnt_[i] += 1;
    if (regAccsCnt_[i] >= windowSize_) {
      double ratio = static_cast<double>(fpCnt_[i]) / regAccsCnt_[i];
      mrone_[i] = params_.deltaMrone * ratio + (1.0 - params_.deltaMrone) * mrone_[i];
      regAccsCnt_[i] = 0;
      fpCnt_[i] = 0;
    }
  }

  // Speculative access upon a negative indication; a miss there is a true
  // negative.
  void recordSpeculativeAccess(size_t i, bool wasTrueNegative) {
    checkIndex(i);
    specAccsCnt_[i] += 1;
    if (wasTrueNegative) tnCnt_[i] += 1;
    if (specAccsCnt_[i] >= windowSize_) {
      double ratio = static_cast<double>(tnCnt_[i]) / specAccsCnt_[i];
      mrzero_[i] = params_.deltaMrzero * ratio + (1.0 - params_.deltaMrzero) * mrzero_[i];
      specAccsCnt_[i] = 0;
      tnCnt_[i] = 0;
    }
  }

  // Once per epoch, clamp mrzero back down so clients keep an incentive to
  // probe speculatively.
  void clampEpoch() {
    for (double& v : mrzero_) v = std::min(v, params_.mrzeroInit);
  }

  // On every full-indicator advertisement: staleness is nullified, so the
  // staleness-driven counters restart. mrzero values and the regular-access
  // counters are untouched.
  void resetStalenessCounters() {
    std::fill(specAccsCnt_.begin(), specAccsCnt_.end(), 0);
    std::fill(tnCnt_.begin(), tnCnt_.end(), 0);
  }

  // Window tracks 1/10 of the update interval; pending counters survive a
  // window-size change.
  void setWindowSize(uint32_t windowSize) { windowSize_ = std::max<uint32_t>(1, windowSize); }

 private:
  void checkIndex(size_t i) const {
    if (i >= mrone_.size()) throw std::out_of_range("ExclusionEstimates: indication count out of range");
  }

  EstimatorParams params_;
  uint32_t windowSize_;
  std::vector<double> mrone_;
  std::vector<double> mrzero_;
  std::vector<uint32_t> regAccsCnt_;
  std::vector<uint32_t> fpCnt_;
  std::vector<uint32_t> specAccsCnt_;
  std::vector<uint32_t> tnCnt_;
};

}  // namespace salsa

#endif  // SALSA_ESTIMATOR_HPP_
