#include "specagg/channel_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "specagg/errors.hpp"

namespace specagg {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_eta(const ChannelParams& p, int eta) {
  if (eta < 1 || eta > p.m_bands) {
    throw ArgumentError("eta must be in [1, m_bands]; got " + std::to_string(eta) +
                        " with m_bands = " + std::to_string(p.m_bands));
  }
}

}  // namespace

void ChannelParams::validate() const {
  require(snr_p.has_value() != p_bar_p.has_value(),
          "exactly one of snr_p and p_bar_p must be supplied");
  if (snr_p) require(std::isfinite(*snr_p) && *snr_p > 0.0, "snr_p > 0");
  if (p_bar_p) require(*p_bar_p >= 0.0 && *p_bar_p <= 1.0, "p_bar_p ∈ [0,1]");
  require(std::isfinite(snr_s) && snr_s > 0.0, "snr_s > 0");
  require(std::isfinite(spectral_eff_r) && spectral_eff_r > 0.0, "spectral_eff_r > 0");
  require(tau_b_frac >= 0.0 && tau_b_frac <= 1.0, "tau_b_frac ∈ [0,1]");
  require(m_bands >= 1, "m_bands ≥ 1");
  require(k_antennas >= 1, "k_antennas ≥ 1");
}

double sensing_fraction(const ChannelParams& p) {
  const int rounds = (p.m_bands + p.k_antennas - 1) / p.k_antennas;
  return rounds * p.tau_b_frac;
}

double pu_success_prob(const ChannelParams& p) {
  if (p.snr_p.has_value() == p.p_bar_p.has_value()) {
    throw ConfigError("exactly one of snr_p and p_bar_p must be supplied");
  }
  if (p.p_bar_p) return *p.p_bar_p;
  return std::exp(-(std::exp2(p.spectral_eff_r) - 1.0) / *p.snr_p);
}

double su_effective_rate(const ChannelParams& p, int eta) {
  check_eta(p, eta);
  const double transmit_frac = 1.0 - sensing_fraction(p);
  if (transmit_frac <= 0.0) return std::numeric_limits<double>::infinity();
  return p.spectral_eff_r / (eta * transmit_frac);
}

double su_success_prob(const ChannelParams& p, int eta) {
  const double rate = su_effective_rate(p, eta);
  if (std::isinf(rate)) return 0.0;
  double exponent = (std::exp2(rate) - 1.0) / p.snr_s;
  if (p.power_mode == PowerMode::kLimited) exponent *= eta;
  return std::exp(-exponent);
}

double single_band_success_prob(const ChannelParams& p) {
  ChannelParams one = p;
  one.power_mode = PowerMode::kPsd;
  return su_success_prob(one, 1);
}

}  // namespace specagg
