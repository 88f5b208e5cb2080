#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

// Source of uniform randomness. Every sampling operation in the library
// takes a RandomStream&; nothing touches a global generator.
class RandomStream {
 public:
  virtual ~RandomStream() = default;

  // Uniform double in [0, 1).
  virtual double uniform01() = 0;

  // Uniform integer in [0, n), n >= 1.
  std::size_t pick(std::size_t n);

  int bit() { return uniform01() < 0.5 ? 0 : 1; }
};

// Deterministic seeded stream. Children are derived from the construction
// seed and a tag, never from generator state, so sibling streams stay
// independent of how much the parent has been consumed.
class SeededStream final : public RandomStream {
 public:
  explicit SeededStream(std::uint64_t seed);

  double uniform01() override;
  std::uint64_t next_u64();

  SeededStream child(std::string_view tag) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Replays a fixed list of uniform01 values, cycling when exhausted. Lets a
// caller force a particular measurement branch; used by the exhaustive
// self-checks and by tests.
class ScriptedStream final : public RandomStream {
 public:
  explicit ScriptedStream(std::vector<double> values);
  double uniform01() override;

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

// FNV-1a over bytes; also the transcript digest primitive.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 14695981039346656037ull);

}  // namespace qpc
