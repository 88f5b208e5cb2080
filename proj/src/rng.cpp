#include "qpc/rng.hpp"

#include <stdexcept>

namespace qpc {

std::size_t RandomStream::pick(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pick: empty range");
  auto idx = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

SeededStream::SeededStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double SeededStream::uniform01() {
  // 53 random mantissa bits; mt19937_64 output is fully specified by the
  // standard, so drawing this way is reproducible across platforms.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededStream::next_u64() { return engine_(); }

SeededStream SeededStream::child(std::string_view tag) const {
  char seed_bytes[8];
  for (int i = 0; i < 8; ++i)
    seed_bytes[i] = static_cast<char>((seed_ >> (8 * i)) & 0xff);
  std::uint64_t h = fnv1a64(std::string_view(seed_bytes, 8));
  return SeededStream(fnv1a64(tag, h));
}

ScriptedStream::ScriptedStream(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("scripted stream needs at least one value");
}

double ScriptedStream::uniform01() {
  double v = values_[next_];
  next_ = (next_ + 1) % values_.size();
  return v;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace qpc
