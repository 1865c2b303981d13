#ifndef SALSA_WIRE_HPP_
#define SALSA_WIRE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "salsa/indicator.hpp"

namespace salsa {

// MSB-first bit packing into a byte vector, zero-padded at the end.
class BitWriter {
 public:
  void write(uint64_t value, uint32_t widthBits) {
    for (int i = static_cast<int>(widthBits) - 1; i >= 0; --i) {
      uint8_t b = static_cast<uint8_t>((value >> i) & 1u);
      if (bitPos_ == 0) bytes_.push_back(0);
      if (b) bytes_.back() |= (0x80u >> bitPos_);
      bitPos_ = (bitPos_ + 1) & 7;
    }
  }
  std::vector<uint8_t> take() { return std::move(bytes_); }
  size_t bitCount() const { return bytes_.empty() ? 0 : (bytes_.size() - 1) * 8 + (bitPos_ == 0 ? 8 : bitPos_); }

 private:
  std::vector<uint8_t> bytes_;
  uint32_t bitPos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  uint64_t read(uint32_t widthBits) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < widthBits; ++i) {
      size_t byteIdx = pos_ >> 3;
      if (byteIdx >= bytes_.size()) throw std::runtime_error("BitReader: out of data");
      uint8_t bit = (bytes_[byteIdx] >> (7 - (pos_ & 7))) & 1u;
      v = (v << 1) | bit;
      ++pos_;
    }
    return v;
  }

 private:
  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
};

// Delta wire format:
//   [count: 32-bit unsigned BE]
//   [count position fields, each ceil(log2(referenceSize)) bits, BE,
//    packed MSB-first, zero-padded to a byte boundary]
inline std::vector<uint8_t> encodeDelta(const DeltaUpdate& d) {
  BitWriter w;
  w.write(static_cast<uint32_t>(d.flippedPositions.size()), 32);
  uint32_t width = ceilLog2(d.referenceSize);
  for (uint32_t pos : d.flippedPositions) w.write(pos, width);
  return w.take();
}

inline DeltaUpdate decodeDelta(const std::vector<uint8_t>& bytes, uint32_t referenceSize) {
  BitReader r(bytes);
  uint32_t count = static_cast<uint32_t>(r.read(32));
  uint32_t width = ceilLog2(referenceSize);
  DeltaUpdate d;
  d.referenceSize = referenceSize;
  d.flippedPositions.reserve(count);
  uint64_t prev = 0;
  for (uint32_t i = 0; i < count; ++i) {
    uint64_t pos = r.read(width);
    if (pos >= referenceSize) throw std::runtime_error("decodeDelta: position out of range");
    if (i > 0 && pos <= prev) throw std::runtime_error("decodeDelta: positions not strictly increasing");
    d.flippedPositions.push_back(static_cast<uint32_t>(pos));
    prev = pos;
  }
  return d;
}

// Payload bits of a delta message, the only part charged to the budget.
inline uint64_t deltaPayloadBits(size_t numPositions, uint32_t referenceSize) {
  return static_cast<uint64_t>(numPositions) * ceilLog2(referenceSize);
}

// Full-indicator advertisement format:
//   [sizeBits: 32-bit unsigned BE][numHashes: 8-bit][hashSeed: 64-bit BE]
//   [raw bit array, MSB-first, zero-padded]
inline std::vector<uint8_t> encodeFull(const Indicator& ind) {
  BitWriter w;
  w.write(ind.sizeBits(), 32);
  w.write(static_cast<uint8_t>(ind.numHashes()), 8);
  w.write(ind.hashSeed(), 64);
  std::vector<uint8_t> out = w.take();
  out.insert(out.end(), ind.bytes().begin(), ind.bytes().end());
  return out;
}

inline Indicator decodeFull(const std::vector<uint8_t>& bytes) {
  BitReader r(bytes);
  uint32_t sizeBits = static_cast<uint32_t>(r.read(32));
  int numHashes = static_cast<int>(r.read(8));
  uint64_t seed = r.read(64);
  Indicator ind(sizeBits, numHashes, seed);
  size_t headerBytes = 13;  // 32 + 8 + 64 bits
  if (bytes.size() < headerBytes + ind.bytes().size())
    throw std::runtime_error("decodeFull: truncated message");
  std::copy(bytes.begin() + headerBytes, bytes.begin() + headerBytes + ind.bytes().size(),
            ind.bytes().begin());
  return ind;
}

}  // namespace salsa

#endif  // SALSA_WIRE_HPP_
