#pragma once

// Deterministic random streams.
//
// Every subsystem draws from its own stream, seeded from (run seed, stream id)
// through splitmix64 into a std::mt19937_64 engine. The derived distributions
// below are implemented here rather than with <random> distributions, whose
// output is implementation-defined, so traces reproduce across toolchains.

#include <cstdint>
#include <limits>
#include <random>

namespace mscsim::sim {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

 private:
  std::mt19937_64 engine_;
};

enum class Subsystem { Mobility, Channel, Coding, Crypto };

struct RunSeed {
  std::uint64_t seed = 0;
  std::uint64_t mobility_stream = 1;
  std::uint64_t channel_stream = 2;
  std::uint64_t coding_stream = 3;
  std::uint64_t crypto_stream = 4;

  std::uint64_t stream_id(Subsystem s) const noexcept;
  RandomStream stream(Subsystem s) const { return RandomStream(seed, stream_id(s)); }

  friend bool operator==(const RunSeed&, const RunSeed&) = default;
};

}  // namespace mscsim::sim
