#include "mscsim/sim/random.hpp"

#include <stdexcept>

namespace mscsim::sim {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(seed ^ splitmix64(stream_id))) {}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomStream::below: zero bound");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

bool RandomStream::bernoulli(double p) {
  return uniform01() < p;
}

std::uint64_t RunSeed::stream_id(Subsystem s) const noexcept {
  switch (s) {
    case Subsystem::Mobility: return mobility_stream;
    case Subsystem::Channel: return channel_stream;
    case Subsystem::Coding: return coding_stream;
    case Subsystem::Crypto: return crypto_stream;
  }
  return 0;
}

}  // namespace mscsim::sim
