#ifndef SALSA_HASH_HPP_
#define SALSA_HASH_HPP_

#include <cstdint>
#include <string_view>

namespace salsa {

// Finalizer-style 64-bit mixer (splitmix64). Used everywhere a seeded,
// reproducible hash of a 64-bit key is needed.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hashKey(uint64_t key, uint64_t seed) {
  return mix64(key ^ mix64(seed));
}

// Stable FNV-1a mapping of raw trace tokens to 64-bit ids.
inline uint64_t stableId(std::string_view token) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace salsa

#endif  // SALSA_HASH_HPP_
