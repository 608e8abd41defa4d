#include "specagg/analysis.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "specagg/errors.hpp"

namespace specagg {
namespace {

std::string describe_unstable(double lambda_p, double mu_p) {
  std::ostringstream os;
  os << "unstable primary queues: lambda_p = " << lambda_p << " exceeds mu_p = " << mu_p;
  return os.str();
}

// P_s(n) for n = 0..M, with P_s(0) = 0 (nothing to transmit on).
std::vector<double> su_success_table(const ChannelParams& c) {
  std::vector<double> table(static_cast<std::size_t>(c.m_bands) + 1, 0.0);
  for (int n = 1; n <= c.m_bands; ++n) table[n] = su_success_prob(c, n);
  return table;
}

double occupancy_weight(int m, int eta, double pi) {
  return binomial(m, eta) * std::pow(pi, eta) * std::pow(1.0 - pi, m - eta);
}

}  // namespace

UnstablePrimary::UnstablePrimary(double lambda_p, double mu_p)
    : std::domain_error(describe_unstable(lambda_p, mu_p)), lambda_p_(lambda_p), mu_p_(mu_p) {}

void TrafficParams::validate() const {
  if (!(lambda_p >= 0.0 && lambda_p <= 1.0)) throw ConfigError("lambda_p ∈ [0,1]");
  if (!(lambda_s >= 0.0 && lambda_s <= 1.0)) throw ConfigError("lambda_s ∈ [0,1]");
}

double primary_service_rate(const ChannelParams& c, const SensingParams& s) {
  return pu_success_prob(c) * (1.0 - s.p_md);
}

double empty_probability(double mu_p, const TrafficParams& t) {
  if (t.lambda_p == 0.0) return 1.0;
  if (t.lambda_p > mu_p) throw UnstablePrimary(t.lambda_p, mu_p);
  return 1.0 - t.lambda_p / mu_p;
}

double secondary_service_rate(const ChannelParams& c, const SensingParams& s,
                              const TrafficParams& t) {
  const double pi = empty_probability(primary_service_rate(c, s), t);
  const int m = c.m_bands;
  const auto p_s = su_success_table(c);

  double mu_s = 0.0;
  for (int eta = 1; eta <= m; ++eta) {
    double inner = 0.0;
    for (int n = 1; n <= eta; ++n) {
      inner += binomial(eta, n) * std::pow(1.0 - s.p_fa, n) * std::pow(s.p_fa, eta - n) * p_s[n];
    }
    mu_s += occupancy_weight(m, eta, pi) * std::pow(1.0 - s.p_md, m - eta) * inner;
  }
  return mu_s;
}

double mu_s_oracle(const ChannelParams& c, const SensingParams& s, const TrafficParams& t) {
  const int m = c.m_bands;
  if (m > kOracleMaxBands) {
    throw ArgumentError("mu_s_oracle enumerates 4^M outcomes; M = " + std::to_string(m) +
                        " exceeds the limit of " + std::to_string(kOracleMaxBands));
  }
  const double pi = empty_probability(primary_service_rate(c, s), t);
  const auto p_s = su_success_table(c);
  const std::uint32_t patterns = 1u << m;

  double total = 0.0;
  for (std::uint32_t busy = 0; busy < patterns; ++busy) {
    double p_occupancy = 1.0;
    for (int b = 0; b < m; ++b) p_occupancy *= ((busy >> b) & 1u) ? 1.0 - pi : pi;
    if (p_occupancy == 0.0) continue;

    for (std::uint32_t idle_decl = 0; idle_decl < patterns; ++idle_decl) {
      double p_decision = 1.0;
      int declared = 0;
      bool collision = false;
      for (int b = 0; b < m; ++b) {
        const bool is_busy = (busy >> b) & 1u;
        const bool said_idle = (idle_decl >> b) & 1u;
        if (is_busy) {
          p_decision *= said_idle ? s.p_md : 1.0 - s.p_md;
        } else {
          p_decision *= said_idle ? 1.0 - s.p_fa : s.p_fa;
        }
        declared += said_idle ? 1 : 0;
        collision = collision || (is_busy && said_idle);
      }
      // Silent when nothing is declared idle; lost on any shared band.
      if (declared == 0 || collision) continue;
      total += p_occupancy * p_decision * p_s[declared];
    }
  }
  return total;
}

double single_band_service_rate(const ChannelParams& c, const SensingParams& s,
                                const TrafficParams& t) {
  const double pi = empty_probability(primary_service_rate(c, s), t);
  const int m = c.m_bands;
  const double p_single = single_band_success_prob(c);

  double rate = 0.0;
  for (int eta = 1; eta <= m; ++eta) {
    const double some_idle_found = 1.0 - std::pow(s.p_fa, eta);
    rate += occupancy_weight(m, eta, pi) * std::pow(1.0 - s.p_md, m - eta) * some_idle_found;
  }
  return rate * p_single;
}

AnalyticalResult analyze(const ChannelParams& c, const SensingParams& s, const TrafficParams& t) {
  AnalyticalResult r;
  r.mu_p = primary_service_rate(c, s);
  r.pi = empty_probability(r.mu_p, t);
  r.mu_s = secondary_service_rate(c, s, t);
  r.primary_stable = t.lambda_p < r.mu_p;
  return r;
}

std::vector<RegionPoint> stability_region(const ChannelParams& c, const SensingParams& s,
                                          const std::vector<double>& lambda_p_grid) {
  const double mu_p = primary_service_rate(c, s);
  std::vector<RegionPoint> points;
  points.reserve(lambda_p_grid.size());
  for (const double lambda_p : lambda_p_grid) {
    RegionPoint pt;
    pt.lambda_p = lambda_p;
    if (lambda_p >= mu_p && lambda_p > 0.0) {
      pt.excluded = true;
      pt.warning = describe_unstable(lambda_p, mu_p);
    } else {
      pt.lambda_s_max = secondary_service_rate(c, s, TrafficParams{lambda_p, 0.0});
    }
    points.push_back(std::move(pt));
  }
  return points;
}

bool in_stability_region(const ChannelParams& c, const SensingParams& s, const TrafficParams& t) {
  const double mu_p = primary_service_rate(c, s);
  if (!(t.lambda_p < mu_p)) return false;
  return t.lambda_s < secondary_service_rate(c, s, t);
}

}  // namespace specagg
