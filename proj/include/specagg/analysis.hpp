#pragma once

#include <string>
#include <vector>

#include "specagg/channel_model.hpp"
#include "specagg/sensing_model.hpp"

namespace specagg {

/// Symmetric Bernoulli arrival rates, packets per slot.
struct TrafficParams {
  double lambda_p = 0.0;
  double lambda_s = 0.0;

  void validate() const;
};

struct AnalyticalResult {
  double mu_p = 0.0;
  double pi = 0.0;  ///< probability that a given primary queue is empty
  double mu_s = 0.0;
  bool primary_stable = false;

  /// Loynes: the secondary queue is stable iff lambda_s < mu_s.
  bool secondary_stable_at(double lambda_s) const { return primary_stable && lambda_s < mu_s; }
};

/// P_p * (1 - P_MD): a primary packet survives iff its link is not in
/// outage and the (saturated) secondary user detects the band as busy.
double primary_service_rate(const ChannelParams& c, const SensingParams& s);

/// 1 - lambda_p / mu_p. Throws UnstablePrimary when lambda_p > mu_p.
double empty_probability(double mu_p, const TrafficParams& t);

/// Dominant-system secondary service rate in closed form.
double secondary_service_rate(const ChannelParams& c, const SensingParams& s,
                              const TrafficParams& t);

/// Largest band count accepted by `mu_s_oracle`.
inline constexpr int kOracleMaxBands = 12;

/// Brute-force secondary service rate: enumerates every occupancy and
/// sensing pattern and applies the access/collision rules literally.
/// Throws ArgumentError for m_bands > kOracleMaxBands.
double mu_s_oracle(const ChannelParams& c, const SensingParams& s, const TrafficParams& t);

/// Baseline where the secondary user picks a single band sensed idle and
/// transmits on it at full power.
double single_band_service_rate(const ChannelParams& c, const SensingParams& s,
                                const TrafficParams& t);

/// mu_p, pi and mu_s for one operating point. Throws UnstablePrimary.
AnalyticalResult analyze(const ChannelParams& c, const SensingParams& s, const TrafficParams& t);

struct RegionPoint {
  double lambda_p = 0.0;
  double lambda_s_max = 0.0;
  bool excluded = false;
  std::string warning;
};

/// Boundary of the stability region over a grid of primary arrival rates.
/// Points with lambda_p >= mu_p are kept but marked excluded.
std::vector<RegionPoint> stability_region(const ChannelParams& c, const SensingParams& s,
                                          const std::vector<double>& lambda_p_grid);

/// True iff (lambda_p, lambda_s) lies strictly inside the stability region.
bool in_stability_region(const ChannelParams& c, const SensingParams& s, const TrafficParams& t);

}  // namespace specagg
