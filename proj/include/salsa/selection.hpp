#ifndef SALSA_SELECTION_HPP_
#define SALSA_SELECTION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace salsa {

// One query's view of the system: what each indicator said, what each
// access costs, and the miss probability assigned per cache.
struct SelectionInstance {
  std::vector<double> accessCosts;
  double missPenalty = 0.0;
  std::vector<uint8_t> indications;
  std::vector<double> missProbs;

  size_t numCaches() const { return accessCosts.size(); }
};

// Expected service cost of accessing `subset`: sum of access costs plus
// the miss penalty times the product of the per-cache miss probabilities.
inline double serviceCost(const SelectionInstance& inst, const std::vector<size_t>& subset) {
  double access = 0.0;
  double missProb = 1.0;
  for (size_t j : subset) {
    access += inst.accessCosts[j];
    missProb *= inst.missProbs[j];
  }
  return access + inst.missPenalty * missProb;
}

inline double serviceCostMask(const SelectionInstance& inst, uint32_t mask) {
  double access = 0.0;
  double missProb = 1.0;
  for (size_t j = 0; j < inst.numCaches(); ++j) {
    if (mask & (1u << j)) {
      access += inst.accessCosts[j];
      missProb *= inst.missProbs[j];
    }
  }
  return access + inst.missPenalty * missProb;
}

// Conditioning every miss probability on the total number of positive
// indications is what captures inter-cache dependency: with k positive
// indications, cache j gets mrone_j[k] if its own indication was positive
// and mrzero_j[k] otherwise.
inline std::vector<double> assignMissProbs(const std::vector<uint8_t>& indications,
                                           const std::vector<std::vector<double>>& mroneTables,
                                           const std::vector<std::vector<double>>& mrzeroTables) {
  size_t k = 0;
  for (uint8_t b : indications) k += (b != 0);
  std::vector<double> probs(indications.size());
  for (size_t j = 0; j < indications.size(); ++j) {
    probs[j] = indications[j] ? mroneTables[j].at(k) : mrzeroTables[j].at(k);
  }
  return probs;
}

namespace detail {

constexpr double kCostTieTol = 1e-12;

inline std::vector<size_t> maskToSubset(uint32_t mask, size_t n) {
  std::vector<size_t> subset;
  for (size_t j = 0; j < n; ++j)
    if (mask & (1u << j)) subset.push_back(j);
  return subset;
}

}  // namespace detail

// Minimizes serviceCost over all 2^N subsets. Ties (within an absolute
// tolerance) break toward the smaller subset, then the lexicographically
// smallest index set.
inline std::vector<size_t> selectExhaustive(const SelectionInstance& inst) {
  size_t n = inst.numCaches();
  if (n > 24) throw std::invalid_argument("selectExhaustive: too many caches, use selectGreedy");
  uint32_t bestMask = 0;
  double bestCost = inst.missPenalty;  // empty subset
  auto bestSubset = std::vector<size_t>{};
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    double cost = serviceCostMask(inst, mask);
    if (cost < bestCost - detail::kCostTieTol) {
      bestMask = mask;
      bestCost = cost;
      bestSubset = detail::maskToSubset(mask, n);
    } else if (std::abs(cost - bestCost) <= detail::kCostTieTol) {
      auto subset = detail::maskToSubset(mask, n);
      if (subset.size() < bestSubset.size() ||
          (subset.size() == bestSubset.size() && subset < bestSubset)) {
        bestMask = mask;
        bestSubset = std::move(subset);
      }
    }
  }
  (void)bestMask;
  return bestSubset;
}

// Starting from the empty set, repeatedly add the cache that most decreases
// the cost; stop when no addition strictly decreases it. Ties break toward
// the lowest index.
inline std::vector<size_t> selectGreedy(const SelectionInstance& inst) {
  size_t n = inst.numCaches();
  std::vector<bool> chosen(n, false);
  std::vector<size_t> subset;
  double current = inst.missPenalty;
  for (;;) {
    double bestCost = current;
    size_t bestIdx = n;
    for (size_t j = 0; j < n; ++j) {
      if (chosen[j]) continue;
      subset.push_back(j);
      double cost = serviceCost(inst, subset);
      subset.pop_back();
      if (cost < bestCost - detail::kCostTieTol) {
        bestCost = cost;
        bestIdx = j;
      }
    }
    if (bestIdx == n) break;
    chosen[bestIdx] = true;
    subset.push_back(bestIdx);
    current = bestCost;
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace salsa

#endif  // SALSA_SELECTION_HPP_
