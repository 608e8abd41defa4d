#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specagg/random.hpp"

namespace specagg {

struct SensingParams {
  double p_fa = 0.0;  ///< idle band declared busy
  double p_md = 0.0;  ///< busy band declared idle

  void validate() const;
};

/// Which primary bands carry a transmission in the current slot.
struct BandState {
  std::vector<bool> busy;

  std::size_t size() const { return busy.size(); }
  std::size_t count_busy() const;
};

/// The secondary user's per-band verdicts for the current slot.
struct SensingDecision {
  std::vector<bool> declared_idle;

  std::size_t size() const { return declared_idle.size(); }
  std::size_t count_idle() const;
  /// True iff some band declared idle is actually busy.
  bool collides_with(const BandState& bands) const;
};

/// Draws one independent decision per band from `rng`, in band order.
SensingDecision sense(const BandState& bands, const SensingParams& s, CounterRng& rng);

/// Same as `sense`, with the per-band uniforms supplied by the caller:
/// band m is declared idle iff uniforms[m] falls below its idle probability.
SensingDecision sense_with(const BandState& bands, const SensingParams& s,
                           std::span<const double> uniforms);

/// Probability that, with `eta_free` idle bands out of `m`, exactly
/// `n_declared` of the idle ones are declared idle, jointly with every busy
/// band being detected (or, when `all_busy_detected` is false, at least one
/// busy band being missed).
double decision_probability(int eta_free, int n_declared, bool all_busy_detected,
                            const SensingParams& s, int m);

/// C(n, k) as a double, computed multiplicatively.
double binomial(int n, int k);

}  // namespace specagg
