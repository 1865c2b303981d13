#include <doctest.h>

#include <random>
#include <set>

#include "salsa/wire.hpp"

using namespace salsa;

TEST_CASE("encodeDelta: empty delta is just the 32-bit zero count") {
  DeltaUpdate d{{}, 1024};
  auto bytes = encodeDelta(d);
  CHECK(bytes == std::vector<uint8_t>{0, 0, 0, 0});
}

TEST_CASE("encodeDelta: worked example, positions {3, 17} at 1024 bits") {
  // count=2, then two 10-bit fields 0000000011 and 0000010001, zero-padded:
  // payload bits 00000000 11000001 0001 0000
  DeltaUpdate d{{3, 17}, 1024};
  auto bytes = encodeDelta(d);
  CHECK(bytes == std::vector<uint8_t>{0, 0, 0, 2, 0x00, 0xC1, 0x10});
  CHECK(deltaPayloadBits(2, 1024) == 20);
}

TEST_CASE("delta round-trip on random updates") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    uint32_t refSize = 2 + static_cast<uint32_t>(rng() % 5000);
    std::set<uint32_t> posSet;
    size_t count = rng() % 64;
    while (posSet.size() < count) posSet.insert(static_cast<uint32_t>(rng() % refSize));
    DeltaUpdate d{{posSet.begin(), posSet.end()}, refSize};
    auto bytes = encodeDelta(d);
    DeltaUpdate back = decodeDelta(bytes, refSize);
    CHECK(back.flippedPositions == d.flippedPositions);
    CHECK(back.referenceSize == refSize);
    // length law: 32 + D * ceil(log2 I), padded to the next byte
    size_t expectedBits = 32 + d.flippedPositions.size() * ceilLog2(refSize);
    CHECK(bytes.size() == (expectedBits + 7) / 8);
  }
}

TEST_CASE("decodeDelta validates its input") {
  // position >= referenceSize: 31 encoded in 5-bit fields, replayed
  // against a reference of only 20 bits
  DeltaUpdate bad{{31}, 32};
  auto bytes = encodeDelta(bad);
  CHECK_THROWS(decodeDelta(bytes, 20));
  // truncated message
  bytes.pop_back();
  CHECK_THROWS(decodeDelta(bytes, 32));
}

TEST_CASE("full advertisement round-trip") {
  std::mt19937_64 rng(8);
  Indicator ind(300, 7, 0xDEADBEEFCAFEULL);
  for (uint32_t i = 0; i < 300; ++i)
    if (rng() & 1) ind.setBit(i);
  auto bytes = encodeFull(ind);
  // header: sizeBits 32-bit BE, numHashes 8-bit, hashSeed 64-bit BE
  CHECK(bytes[0] == 0);
  CHECK(bytes[1] == 0);
  CHECK(bytes[2] == 0x01);
  CHECK(bytes[3] == 0x2C);
  CHECK(bytes[4] == 7);
  CHECK(bytes.size() == 13 + (300 + 7) / 8);
  Indicator back = decodeFull(bytes);
  CHECK(back == ind);
}
