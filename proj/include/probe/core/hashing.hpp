#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace probe {

// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

// Incremental SHA-256 for hashing several files without concatenating them.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view bytes);
  std::string hex_digest();

 private:
  void* ctx_;
};

constexpr std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a value into a running key; order-sensitive.
constexpr std::uint64_t hash_combine(std::uint64_t key, std::uint64_t value) {
  return splitmix64(key ^ splitmix64(value));
}

constexpr std::uint64_t hash_combine(std::uint64_t key, std::string_view value) {
  return hash_combine(key, fnv1a64(value));
}

// Top 53 bits mapped to [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Seeded generator whose output is identical on every platform: the engine is
// fully specified by the standard and the bounded draws avoid the
// implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return to_unit_interval(engine_()); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace probe
