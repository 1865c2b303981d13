#include <doctest.h>

#include <random>

#include "salsa/selection.hpp"

using namespace salsa;

namespace {

// Independent recursive enumeration, used as the optimality oracle.
void enumerate(const SelectionInstance& inst, size_t j, std::vector<size_t>& current,
               double& bestCost, std::vector<size_t>& bestSubset) {
  if (j == inst.numCaches()) {
    double cost = serviceCost(inst, current);
    if (cost < bestCost) {
      bestCost = cost;
      bestSubset = current;
    }
    return;
  }
  enumerate(inst, j + 1, current, bestCost, bestSubset);
  current.push_back(j);
  enumerate(inst, j + 1, current, bestCost, bestSubset);
  current.pop_back();
}

double bruteForceBest(const SelectionInstance& inst) {
  double bestCost = std::numeric_limits<double>::infinity();
  std::vector<size_t> current, bestSubset;
  enumerate(inst, 0, current, bestCost, bestSubset);
  return bestCost;
}

}  // namespace

TEST_CASE("serviceCost basics") {
  SelectionInstance inst;
  inst.accessCosts = {1.0, 2.0};
  inst.missPenalty = 30.0;
  inst.missProbs = {0.5, 0.2};
  CHECK(serviceCost(inst, {}) == doctest::Approx(30.0).epsilon(1e-12));
  SelectionInstance one;
  one.accessCosts = {1.0};
  one.missPenalty = 30.0;
  one.missProbs = {0.1};
  CHECK(serviceCost(one, {0}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(serviceCost(inst, {0, 1}) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("assignMissProbs conditions on the positive-indication count") {
  std::vector<std::vector<double>> mrone(3), mrzero(3);
  for (size_t j = 0; j < 3; ++j) {
    mrone[j] = {0.10 + j, 0.11 + j, 0.12 + j, 0.13 + j};
    mrzero[j] = {0.20 + j, 0.21 + j, 0.22 + j, 0.23 + j};
  }
  SUBCASE("all negative") {
    auto p = assignMissProbs({0, 0, 0}, mrone, mrzero);
    CHECK(p == std::vector<double>{0.20, 1.20, 2.20});
  }
  SUBCASE("one positive") {
    auto p = assignMissProbs({1, 0, 0}, mrone, mrzero);
    CHECK(p == std::vector<double>{0.11, 1.21, 2.21});
  }
  SUBCASE("two positive") {
    std::vector<std::vector<double>> mr1 = mrone;
    mr1[0][2] = 1e-9;
    mr1[1][2] = 2e-9;
    auto p = assignMissProbs({1, 1, 0}, mr1, mrzero);
    CHECK(p[0] == 1e-9);
    CHECK(p[1] == 2e-9);
    CHECK(p[2] == 2.22);
  }
}

TEST_CASE("assignMissProbs commutes with cache permutation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<> uni(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 4;
    std::vector<std::vector<double>> mrone(n), mrzero(n);
    std::vector<uint8_t> ind(n);
    for (size_t j = 0; j < n; ++j) {
      for (size_t i = 0; i <= n; ++i) {
        mrone[j].push_back(uni(rng));
        mrzero[j].push_back(uni(rng));
      }
      ind[j] = rng() & 1;
    }
    auto base = assignMissProbs(ind, mrone, mrzero);
    std::vector<size_t> perm{2, 0, 3, 1};
    std::vector<std::vector<double>> pOne(n), pZero(n);
    std::vector<uint8_t> pInd(n);
    for (size_t j = 0; j < n; ++j) {
      pOne[j] = mrone[perm[j]];
      pZero[j] = mrzero[perm[j]];
      pInd[j] = ind[perm[j]];
    }
    auto permuted = assignMissProbs(pInd, pOne, pZero);
    for (size_t j = 0; j < n; ++j) REQUIRE(permuted[j] == base[perm[j]]);
  }
}

TEST_CASE("selectExhaustive single-cache cases") {
  SelectionInstance inst;
  inst.accessCosts = {1.0};
  inst.missPenalty = 30.0;
  inst.missProbs = {0.1};
  CHECK(selectExhaustive(inst) == std::vector<size_t>{0});

  // the Bloom-paradox case: skip the cache despite a positive indication
  inst.missPenalty = 10.0;
  inst.missProbs = {0.95};
  CHECK(selectExhaustive(inst).empty());
}

TEST_CASE("selectExhaustive three symmetric caches") {
  SelectionInstance inst;
  inst.accessCosts = {1.0, 2.0, 3.0};
  inst.missPenalty = 30.0;
  inst.missProbs = {0.5, 0.5, 0.5};
  // enumeration: {} 30, {0} 16, {1} 17, {2} 18, {0,1} 10.5, {0,2} 11.5,
  // {1,2} 12.5, {0,1,2} 9.75
  CHECK(selectExhaustive(inst) == std::vector<size_t>{0, 1, 2});
  CHECK(serviceCost(inst, {0, 1, 2}) == doctest::Approx(9.75).epsilon(1e-12));
}

TEST_CASE("selectExhaustive matches the brute-force oracle on random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<> cost(1.0, 5.0);
  std::uniform_real_distribution<> prob(0.0, 1.0);
  const double penalties[] = {10.0, 30.0, 300.0};
  for (int trial = 0; trial < 1000; ++trial) {
    SelectionInstance inst;
    size_t n = 1 + rng() % 6;
    for (size_t j = 0; j < n; ++j) {
      inst.accessCosts.push_back(cost(rng));
      inst.missProbs.push_back(prob(rng));
    }
    inst.missPenalty = penalties[rng() % 3];
    double best = bruteForceBest(inst);
    REQUIRE(serviceCost(inst, selectExhaustive(inst)) == best);
  }
}

TEST_CASE("selectExhaustive refuses more than 24 caches") {
  SelectionInstance inst;
  inst.accessCosts.assign(25, 1.0);
  inst.missProbs.assign(25, 0.5);
  inst.missPenalty = 30.0;
  CHECK_THROWS_AS(selectExhaustive(inst), std::invalid_argument);
}

TEST_CASE("selectGreedy basics") {
  SelectionInstance inst;
  inst.accessCosts = {1.0};
  inst.missPenalty = 30.0;
  inst.missProbs = {0.1};
  CHECK(selectGreedy(inst) == std::vector<size_t>{0});

  // certain miss everywhere: accessing anything only adds cost
  SelectionInstance all1;
  all1.accessCosts = {1.0, 2.0, 3.0};
  all1.missPenalty = 30.0;
  all1.missProbs = {1.0, 1.0, 1.0};
  CHECK(selectGreedy(all1).empty());
}

TEST_CASE("greedy never beats exhaustive") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<> cost(1.0, 5.0);
  std::uniform_real_distribution<> prob(0.0, 1.0);
  double worstRatio = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    SelectionInstance inst;
    size_t n = 1 + rng() % 6;
    for (size_t j = 0; j < n; ++j) {
      inst.accessCosts.push_back(cost(rng));
      inst.missProbs.push_back(prob(rng));
    }
    inst.missPenalty = 30.0;
    double g = serviceCost(inst, selectGreedy(inst));
    double e = serviceCost(inst, selectExhaustive(inst));
    REQUIRE(g >= e - 1e-12);
    worstRatio = std::max(worstRatio, g / e);
  }
  MESSAGE("worst greedy/exhaustive cost ratio: ", worstRatio);
}

TEST_CASE("monotone penalty response: large enough M forces a non-empty selection") {
  SelectionInstance inst;
  inst.accessCosts = {4.0, 5.0};
  inst.missProbs = {0.9, 0.99};
  inst.missPenalty = 5.5;
  auto small = selectExhaustive(inst);
  inst.missPenalty = 1e6;
  auto large = selectExhaustive(inst);
  CHECK_FALSE(large.empty());
  // the miss term of the chosen subset never decreases in M
  double prev = -1.0;
  for (double m : {10.0, 30.0, 100.0, 1000.0}) {
    inst.missPenalty = m;
    auto subset = selectExhaustive(inst);
    double missProb = 1.0;
    for (size_t j : subset) missProb *= inst.missProbs[j];
    double missTerm = m * missProb;
    CHECK(missTerm >= prev - 1e-12);
    prev = missTerm;
  }
  (void)small;
}
