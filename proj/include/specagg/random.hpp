#pragma once

#include <cstdint>

namespace specagg {

/// Named sub-streams of the simulator's random source.
enum class StreamTag : std::uint64_t {
  kSensing = 1,
  kChannel = 2,
  kArrival = 3,
  kGeneric = 4,
};

/// Counter-based generator: the n-th draw of stream (seed, tag, key) is a
/// pure function of those four values. Distinct (tag, key) pairs give
/// independent streams, and any draw can be reproduced without replaying
/// the ones before it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, StreamTag tag = StreamTag::kGeneric,
                      std::uint64_t key = 0, std::uint64_t counter = 0)
      : seed_(seed), tag_(static_cast<std::uint64_t>(tag)), key_(key), counter_(counter) {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }

  /// Stateless access to draw `counter` of stream (seed, tag, key).
  static double uniform_at(std::uint64_t seed, StreamTag tag, std::uint64_t key,
                           std::uint64_t counter);

 private:
  std::uint64_t seed_;
  std::uint64_t tag_;
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace specagg
