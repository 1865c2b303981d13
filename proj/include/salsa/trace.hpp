#ifndef SALSA_TRACE_HPP_
#define SALSA_TRACE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "salsa/hash.hpp"

namespace salsa {

struct TraceIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One key token per line; blank lines and '#' comments skipped. Raw tokens
// map to stable 64-bit ids, order preserved.
inline std::vector<uint64_t> parseTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceIoError("cannot open trace file: " + path);
  std::vector<uint64_t> keys;
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r\n");
    std::string token = line.substr(first, last - first + 1);
    if (token[0] == '#') continue;
    keys.push_back(stableId(token));
  }
  if (keys.empty()) throw TraceIoError("trace file has no usable lines: " + path);
  return keys;
}

// i.i.d. Zipf draws: P(rank r) proportional to r^(-s). Deterministic in
// the seed; inverse-CDF sampling over the precomputed cumulative weights.
inline std::vector<uint64_t> generateZipf(uint64_t universe, double exponent, uint64_t length,
                                          uint64_t seed) {
  if (universe < 1 || exponent <= 0.0 || length < 1)
    throw std::invalid_argument("generateZipf: need universe >= 1, exponent > 0, length >= 1");
  std::vector<double> cdf(universe);
  double total = 0.0;
  for (uint64_t r = 0; r < universe; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cdf[r] = total;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, total);
  std::vector<uint64_t> keys(length);
  for (uint64_t i = 0; i < length; ++i) {
    double u = uni(rng);
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    uint64_t rank = static_cast<uint64_t>(it - cdf.begin());
    if (rank >= universe) rank = universe - 1;
    keys[i] = mix64(rank + 1);  // scatter ids so hashing tests see realistic keys
  }
  return keys;
}

struct TraceStats {
  uint64_t length = 0;
  uint64_t distinctKeys = 0;
  // Inter-arrival stats cover only keys requested at least twice; absent
  // when no key repeats.
  std::optional<double> meanInterArrival;
  std::optional<double> stdevInterArrival;
  double singularRatio = 0.0;  // requests for once-occurring keys / length
};

inline TraceStats traceStats(const std::vector<uint64_t>& seq) {
  TraceStats st;
  st.length = seq.size();
  std::unordered_map<uint64_t, uint64_t> lastSeen;
  std::unordered_map<uint64_t, uint64_t> counts;
  double sum = 0.0, sumSq = 0.0;
  uint64_t gaps = 0;
  for (uint64_t i = 0; i < seq.size(); ++i) {
    auto it = lastSeen.find(seq[i]);
    if (it != lastSeen.end()) {
      double gap = static_cast<double>(i - it->second);
      sum += gap;
      sumSq += gap * gap;
      ++gaps;
      it->second = i;
    } else {
      lastSeen.emplace(seq[i], i);
    }
    counts[seq[i]] += 1;
  }
  st.distinctKeys = counts.size();
  if (gaps > 0) {
    double mean = sum / gaps;
    st.meanInterArrival = mean;
    st.stdevInterArrival = std::sqrt(std::max(0.0, sumSq / gaps - mean * mean));
  }
  uint64_t singularRequests = 0;
  for (const auto& [key, n] : counts)
    if (n == 1) singularRequests += 1;
  st.singularRatio = seq.empty() ? 0.0 : static_cast<double>(singularRequests) / seq.size();
  return st;
}

}  // namespace salsa

#endif  // SALSA_TRACE_HPP_
