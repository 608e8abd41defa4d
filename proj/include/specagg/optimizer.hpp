#pragma once

#include <utility>
#include <vector>

#include "specagg/analysis.hpp"

namespace specagg {

struct OptimizeResult {
  int m_opt = 1;
  double mu_s_opt = 0.0;
  /// (m, mu_s(m)) for m = 1..M.
  std::vector<std::pair<int, double>> profile;
  /// Service rate of a sensed primary band, P_p (1 - P_MD).
  double mu_p_sensed = 0.0;
  /// Service rate of a band the secondary never senses or touches, P_p.
  double mu_p_unsensed = 0.0;
};

/// Grid search over the number of sensed bands m = 1..c.m_bands. Both the
/// sensing time and the aggregation opportunities use m. Ties go to the
/// smallest m. Throws UnstablePrimary when lambda_p >= mu_p.
OptimizeResult optimize_sensed_bands(const ChannelParams& c, const SensingParams& s,
                                     const TrafficParams& t);

}  // namespace specagg
