#ifndef SALSA_INDICATOR_HPP_
#define SALSA_INDICATOR_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "salsa/hash.hpp"

namespace salsa {

constexpr int kMaxHashes = 16;

// Bits needed to address a position in [0, n). ceil(log2(n)).
inline uint32_t ceilLog2(uint32_t n) {
  if (n <= 1) return 0;
  return static_cast<uint32_t>(std::bit_width(n - 1));
}

// round(bitsPerElement * ln 2), floored at 1 and capped at kMaxHashes.
inline int optimalHashCount(double bitsPerElement) {
  if (bitsPerElement <= 0.0) throw std::invalid_argument("optimalHashCount: bitsPerElement must be > 0");
  int k = static_cast<int>(std::lround(bitsPerElement * std::numbers::ln2));
  return std::clamp(k, 1, kMaxHashes);
}

// Simple Bloom filter. The bit array is stored MSB-first (bit i lives in
// byte i/8, mask 0x80 >> i%8) so serialization is a plain byte copy.
class Indicator {
 public:
  Indicator() = default;

  Indicator(uint32_t sizeBits, int numHashes, uint64_t hashSeed)
      : sizeBits_(sizeBits),
        numHashes_(numHashes),
        hashSeed_(hashSeed),
        bytes_((sizeBits + 7) / 8, 0) {
    if (sizeBits < 1) throw std::invalid_argument("Indicator: sizeBits must be >= 1");
    if (numHashes < 1) throw std::invalid_argument("Indicator: numHashes must be >= 1");
  }

  uint32_t sizeBits() const { return sizeBits_; }
  int numHashes() const { return numHashes_; }
  uint64_t hashSeed() const { return hashSeed_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t>& bytes() { return bytes_; }

  bool bit(uint32_t pos) const { return bytes_[pos >> 3] & (0x80u >> (pos & 7)); }
  void setBit(uint32_t pos) { bytes_[pos >> 3] |= (0x80u >> (pos & 7)); }
  void toggleBit(uint32_t pos) { bytes_[pos >> 3] ^= (0x80u >> (pos & 7)); }

  // Double hashing: probe i uses (h1 + i*h2) mod sizeBits.
  void probePositions(uint64_t key, std::span<uint32_t> out) const {
    uint64_t h1 = hashKey(key, hashSeed_);
    uint64_t h2 = hashKey(key + 0x9e3779b97f4a7c15ULL, hashSeed_) | 1ULL;
    for (int i = 0; i < numHashes_; ++i) {
      out[i] = static_cast<uint32_t>((h1 + static_cast<uint64_t>(i) * h2) % sizeBits_);
    }
  }

  void insert(uint64_t key) {
    uint32_t pos[kMaxHashes];
    probePositions(key, {pos, static_cast<size_t>(numHashes_)});
    for (int i = 0; i < numHashes_; ++i) setBit(pos[i]);
  }

  bool query(uint64_t key) const {
    uint32_t pos[kMaxHashes];
    probePositions(key, {pos, static_cast<size_t>(numHashes_)});
    for (int i = 0; i < numHashes_; ++i)
      if (!bit(pos[i])) return false;
    return true;
  }

  bool operator==(const Indicator& other) const = default;

 private:
  uint32_t sizeBits_ = 0;
  int numHashes_ = 0;
  uint64_t hashSeed_ = 0;
  std::vector<uint8_t> bytes_;
};

inline Indicator buildIndicator(std::span<const uint64_t> items, uint32_t sizeBits,
                                int numHashes, uint64_t hashSeed) {
  Indicator ind(sizeBits, numHashes, hashSeed);
  for (uint64_t key : items) ind.insert(key);
  return ind;
}

// A set of bit positions that differ between two equal-size indicators,
// strictly increasing. referenceSize is the bit-array length the positions
// address; a size change never travels as a delta.
struct DeltaUpdate {
  std::vector<uint32_t> flippedPositions;
  uint32_t referenceSize = 0;
};

inline DeltaUpdate diffPositions(const Indicator& stale, const Indicator& fresh) {
  if (stale.sizeBits() != fresh.sizeBits())
    throw std::invalid_argument("diffPositions: size mismatch forces a full advertisement");
  DeltaUpdate d;
  d.referenceSize = stale.sizeBits();
  const auto& a = stale.bytes();
  const auto& b = fresh.bytes();
  for (size_t byteIdx = 0; byteIdx < a.size(); ++byteIdx) {
    uint8_t x = a[byteIdx] ^ b[byteIdx];
    while (x) {
      int lead = std::countl_zero(x);  // counts within the 8-bit width
      d.flippedPositions.push_back(static_cast<uint32_t>(byteIdx * 8 + lead));
      x ^= static_cast<uint8_t>(0x80u >> lead);
    }
  }
  return d;
}

inline void applyDelta(Indicator& ind, const DeltaUpdate& d) {
  if (d.referenceSize != ind.sizeBits())
    throw std::invalid_argument("applyDelta: size mismatch, await a full advertisement");
  for (uint32_t pos : d.flippedPositions) ind.toggleBit(pos);
}

}  // namespace salsa

#endif  // SALSA_INDICATOR_HPP_
