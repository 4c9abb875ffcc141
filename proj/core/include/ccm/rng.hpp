#pragma once

// Counter-based randomness: every random quantity is a pure function of
// (seed, counter), so replicas and vertices can be generated in any order.

#include <cstdint>
#include <string_view>

namespace ccm::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, used to turn purpose strings into seed-derivation tags.
constexpr std::uint64_t tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose,
                                    std::uint64_t index) {
  return mix(mix(master, purpose), index);
}

// Uniform on [0, 1) with 53 random bits.
constexpr double unit_real(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform on {0, ..., n-1} by multiply-high; bias is below n / 2^64.
constexpr std::uint32_t bounded(std::uint64_t bits, std::uint32_t n) {
  return static_cast<std::uint32_t>(
      (static_cast<unsigned __int128>(bits) * n) >> 64);
}

}  // namespace ccm::rng
