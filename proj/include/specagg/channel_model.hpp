#pragma once

#include <optional>

namespace specagg {

/// How the secondary transmit power scales with the aggregated bandwidth.
enum class PowerMode {
  kPsd,      ///< fixed power spectral density; power grows with eta*W
  kLimited,  ///< fixed total power W*P_s spread over eta*W
};

/// Physical-layer parameters, all as dimensionless ratios.
///
/// Exactly one of `snr_p` and `p_bar_p` must be set: the primary link is
/// described either by its mean SNR or directly by its success probability.
struct ChannelParams {
  std::optional<double> snr_p;
  std::optional<double> p_bar_p;
  double snr_s = 1.0;           ///< secondary mean SNR (best antenna)
  double spectral_eff_r = 2.0;  ///< R = b / (W T), bits/s/Hz
  double tau_b_frac = 0.0;      ///< per-band sensing time over slot length
  int m_bands = 1;
  int k_antennas = 1;
  PowerMode power_mode = PowerMode::kPsd;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

/// ceil(M/K) * tau_B/T, the fraction of the slot spent sensing.
double sensing_fraction(const ChannelParams& p);

/// Primary link success probability exp(-(2^R - 1)/snr_p), or p_bar_p as given.
double pu_success_prob(const ChannelParams& p);

/// R / (eta * (1 - sensing_fraction)^+). Returns +infinity when sensing
/// consumes the whole slot.
double su_effective_rate(const ChannelParams& p, int eta);

/// Secondary success probability when transmitting over `eta` truly idle
/// bands. Exactly 0 when the effective rate is infinite.
double su_success_prob(const ChannelParams& p, int eta);

/// Success probability when only one band of width W carries the packet
/// at full slot power; the eta = 1 case, where both power modes coincide.
double single_band_success_prob(const ChannelParams& p);

}  // namespace specagg
