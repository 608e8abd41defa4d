#include "specagg/sensing_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specagg/errors.hpp"

namespace specagg {

void SensingParams::validate() const {
  if (!(p_fa >= 0.0 && p_fa <= 1.0)) throw ConfigError("p_fa ∈ [0,1]");
  if (!(p_md >= 0.0 && p_md <= 1.0)) throw ConfigError("p_md ∈ [0,1]");
}

std::size_t BandState::count_busy() const {
  return static_cast<std::size_t>(std::count(busy.begin(), busy.end(), true));
}

std::size_t SensingDecision::count_idle() const {
  return static_cast<std::size_t>(std::count(declared_idle.begin(), declared_idle.end(), true));
}

bool SensingDecision::collides_with(const BandState& bands) const {
  for (std::size_t m = 0; m < declared_idle.size(); ++m) {
    if (declared_idle[m] && bands.busy[m]) return true;
  }
  return false;
}

SensingDecision sense_with(const BandState& bands, const SensingParams& s,
                           std::span<const double> uniforms) {
  if (uniforms.size() < bands.size()) {
    throw ArgumentError("sense_with: need one uniform per band");
  }
  SensingDecision d;
  d.declared_idle.resize(bands.size());
  for (std::size_t m = 0; m < bands.size(); ++m) {
    const double p_idle = bands.busy[m] ? s.p_md : 1.0 - s.p_fa;
    d.declared_idle[m] = uniforms[m] < p_idle;
  }
  return d;
}

SensingDecision sense(const BandState& bands, const SensingParams& s, CounterRng& rng) {
  std::vector<double> u(bands.size());
  for (auto& x : u) x = rng.uniform();
  return sense_with(bands, s, u);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  // Each partial product is C(n - k + i, i), exact while below 2^53.
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

double decision_probability(int eta_free, int n_declared, bool all_busy_detected,
                            const SensingParams& s, int m) {
  if (m < 0 || eta_free < 0 || eta_free > m || n_declared < 0 || n_declared > eta_free) {
    throw ArgumentError("decision_probability: need 0 ≤ n ≤ eta ≤ m; got n = " +
                        std::to_string(n_declared) + ", eta = " + std::to_string(eta_free) +
                        ", m = " + std::to_string(m));
  }
  const double idle_part = binomial(eta_free, n_declared) * std::pow(1.0 - s.p_fa, n_declared) *
                           std::pow(s.p_fa, eta_free - n_declared);
  const double detected = std::pow(1.0 - s.p_md, m - eta_free);
  return idle_part * (all_busy_detected ? detected : 1.0 - detected);
}

}  // namespace specagg
