#include "specagg/optimizer.hpp"

#include "specagg/errors.hpp"

namespace specagg {

OptimizeResult optimize_sensed_bands(const ChannelParams& c, const SensingParams& s,
                                     const TrafficParams& t) {
  OptimizeResult result;
  result.mu_p_sensed = primary_service_rate(c, s);
  result.mu_p_unsensed = pu_success_prob(c);
  if (t.lambda_p >= result.mu_p_sensed) throw UnstablePrimary(t.lambda_p, result.mu_p_sensed);

  result.profile.reserve(static_cast<std::size_t>(c.m_bands));
  ChannelParams sub = c;
  for (int m = 1; m <= c.m_bands; ++m) {
    sub.m_bands = m;
    const double mu_s = secondary_service_rate(sub, s, t);
    result.profile.emplace_back(m, mu_s);
    if (m == 1 || mu_s > result.mu_s_opt) {
      result.m_opt = m;
      result.mu_s_opt = mu_s;
    }
  }
  return result;
}

}  // namespace specagg
