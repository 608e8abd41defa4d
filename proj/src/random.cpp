#include "specagg/random.hpp"

namespace specagg {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash4(std::uint64_t seed, std::uint64_t tag, std::uint64_t key,
                              std::uint64_t counter) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (tag * kGolden + 0x632BE59BD9B4E019ULL));
  h = mix64(h ^ (key * 0xD1B54A32D192ED03ULL + kGolden));
  h = mix64(h ^ (counter * 0x8CB92BA72F3D8DD7ULL + kGolden));
  return h;
}

constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t CounterRng::next_u64() { return hash4(seed_, tag_, key_, counter_++); }

double CounterRng::uniform() { return to_unit(next_u64()); }

double CounterRng::uniform_at(std::uint64_t seed, StreamTag tag, std::uint64_t key,
                              std::uint64_t counter) {
  return to_unit(hash4(seed, static_cast<std::uint64_t>(tag), key, counter));
}

}  // namespace specagg
