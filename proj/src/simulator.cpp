#include "specagg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "json.hpp"
#include "specagg/errors.hpp"
#include "specagg/random.hpp"

namespace specagg {
namespace {

void fill_draws(std::uint64_t seed, std::uint64_t slot, int m_bands, SlotDraws& d) {
  const auto m = static_cast<std::size_t>(m_bands);
  d.sensing.resize(m);
  d.pu_channel.resize(m);
  d.pu_arrival.resize(m);

  CounterRng sensing(seed, StreamTag::kSensing, slot);
  for (auto& u : d.sensing) u = sensing.uniform();

  CounterRng channel(seed, StreamTag::kChannel, slot);
  d.su_channel = channel.uniform();
  for (auto& u : d.pu_channel) u = channel.uniform();

  // Arrival stream per queue: key 0 is the secondary, key 1 + m primary m.
  d.su_arrival = CounterRng::uniform_at(seed, StreamTag::kArrival, 0, slot);
  for (std::size_t b = 0; b < m; ++b) {
    d.pu_arrival[b] = CounterRng::uniform_at(seed, StreamTag::kArrival, b + 1, slot);
  }
}

// Online least-squares slope of y against x.
class SlopeAccumulator {
 public:
  void add(double x, double y) {
    ++n_;
    const double dx = x - mean_x_;
    mean_x_ += dx / n_;
    mean_y_ += (y - mean_y_) / n_;
    cxy_ += dx * (y - mean_y_);
    sxx_ += dx * (x - mean_x_);
  }
  double slope() const { return sxx_ > 0.0 ? cxy_ / sxx_ : 0.0; }

 private:
  double n_ = 0.0;
  double mean_x_ = 0.0;
  double mean_y_ = 0.0;
  double cxy_ = 0.0;
  double sxx_ = 0.0;
};

// Ratio estimator with batch-means standard error.
class BatchRatio {
 public:
  BatchRatio(std::uint64_t horizon, int batches)
      : batch_len_(std::max<std::uint64_t>(1, horizon / static_cast<std::uint64_t>(batches))),
        batches_(batches) {}

  void add(std::uint64_t index, std::uint64_t successes, std::uint64_t trials) {
    const auto b = std::min<std::uint64_t>(index / batch_len_, batches_ - 1);
    if (b != current_) flush(b);
    batch_succ_ += successes;
    batch_trials_ += trials;
    total_succ_ += successes;
    total_trials_ += trials;
  }

  double mean() const {
    return total_trials_ ? static_cast<double>(total_succ_) / static_cast<double>(total_trials_)
                         : 0.0;
  }

  double std_err() {
    flush(current_ + 1);
    if (means_.size() < 2) return 0.0;
    double avg = 0.0;
    for (double m : means_) avg += m;
    avg /= static_cast<double>(means_.size());
    double ss = 0.0;
    for (double m : means_) ss += (m - avg) * (m - avg);
    const double k = static_cast<double>(means_.size());
    return std::sqrt(ss / (k - 1.0) / k);
  }

 private:
  void flush(std::uint64_t next) {
    if (batch_trials_ > 0) {
      means_.push_back(static_cast<double>(batch_succ_) / static_cast<double>(batch_trials_));
    }
    batch_succ_ = batch_trials_ = 0;
    current_ = next;
  }

  std::uint64_t batch_len_;
  std::uint64_t batches_;
  std::uint64_t current_ = 0;
  std::uint64_t batch_succ_ = 0;
  std::uint64_t batch_trials_ = 0;
  std::uint64_t total_succ_ = 0;
  std::uint64_t total_trials_ = 0;
  std::vector<double> means_;
};

std::string bits(const std::vector<bool>& v) {
  std::string s(v.size(), '0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) s[i] = '1';
  }
  return s;
}

}  // namespace

const char* to_string(SystemMode mode) {
  return mode == SystemMode::kDominant ? "dominant" : "original";
}

const char* to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::kStable:
      return "STABLE";
    case StabilityVerdict::kUnstable:
      return "UNSTABLE";
    case StabilityVerdict::kInconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

void SimConfig::validate() const {
  scenario.validate();
  if (slots == 0) throw ConfigError("slots > 0");
  if (effective_warmup() >= slots) throw ConfigError("slots > warmup ≥ 0");
  if (batches < 1) throw ConfigError("batches ≥ 1");
  if (!(thresholds.stable_slope <= thresholds.unstable_slope)) {
    throw ConfigError("stable_slope ≤ unstable_slope");
  }
}

SlotDraws SlotDraws::generate(std::uint64_t seed, std::uint64_t slot, int m_bands) {
  SlotDraws d;
  fill_draws(seed, slot, m_bands, d);
  return d;
}

SlotModel::SlotModel(const ScenarioConfig& scenario, SystemMode mode)
    : m_bands_(scenario.channel.m_bands),
      mode_(mode),
      sensing_(scenario.sensing),
      pu_success_(pu_success_prob(scenario.channel)),
      lambda_p_(scenario.traffic.lambda_p),
      lambda_s_(scenario.traffic.lambda_s),
      su_success_(static_cast<std::size_t>(m_bands_) + 1, 0.0) {
  for (int n = 1; n <= m_bands_; ++n) su_success_[n] = su_success_prob(scenario.channel, n);
}

std::pair<QueueState, SlotOutcome> SlotModel::step(const QueueState& state,
                                                   const SlotDraws& draws,
                                                   std::uint64_t slot) const {
  const auto m = static_cast<std::size_t>(m_bands_);
  SlotOutcome out;
  out.slot = slot;

  // Primaries with a backlog transmit on their own band.
  out.occupancy.busy.resize(m);
  for (std::size_t b = 0; b < m; ++b) out.occupancy.busy[b] = state.primary[b] > 0;

  out.sensing = sense_with(out.occupancy, sensing_, draws.sensing);
  const auto n_idle = out.sensing.count_idle();

  const bool has_packet = state.secondary > 0;
  out.su_transmit = n_idle > 0 && (mode_ == SystemMode::kDominant || has_packet);
  out.su_dummy = out.su_transmit && !has_packet;
  out.collision = out.su_transmit && out.sensing.collides_with(out.occupancy);

  QueueState next = state;
  out.pu_departures.assign(m, 0);
  for (std::size_t b = 0; b < m; ++b) {
    if (!out.occupancy.busy[b]) continue;
    const bool shared = out.su_transmit && out.sensing.declared_idle[b];
    if (!shared && draws.pu_channel[b] < pu_success_) {
      out.pu_departures[b] = 1;
      --next.primary[b];
    }
  }

  out.su_channel_success =
      out.su_transmit && !out.collision && draws.su_channel < su_success_[n_idle];
  if (out.su_channel_success && !out.su_dummy) {
    out.su_departure = 1;
    --next.secondary;
  }

  // Late arrivals: served no earlier than the next slot.
  out.pu_arrivals.assign(m, 0);
  for (std::size_t b = 0; b < m; ++b) {
    if (draws.pu_arrival[b] < lambda_p_) {
      out.pu_arrivals[b] = 1;
      ++next.primary[b];
    }
  }
  if (draws.su_arrival < lambda_s_) {
    out.su_arrival = 1;
    ++next.secondary;
  }
  return {std::move(next), std::move(out)};
}

std::pair<QueueState, SlotOutcome> step(const QueueState& state, const SimConfig& cfg,
                                        std::uint64_t slot) {
  const SlotModel model(cfg.scenario, cfg.mode);
  return model.step(state, SlotDraws::generate(cfg.seed, slot, model.m_bands()), slot);
}

SimReport run(const SimConfig& cfg, const SlotObserver& observer) {
  cfg.validate();
  const SlotModel model(cfg.scenario, cfg.mode);
  const int m = model.m_bands();
  const std::uint64_t warmup = cfg.effective_warmup();
  const std::uint64_t measured = cfg.slots - warmup;

  SimReport report;
  report.slots = cfg.slots;
  report.warmup = warmup;

  BatchRatio su_rate(measured, cfg.batches);
  BatchRatio pu_rate(measured, cfg.batches);
  SlopeAccumulator slope;
  double sum_q_s = 0.0;
  double sum_q_p = 0.0;
  std::uint64_t real_departures = 0;

  QueueState state = QueueState::empty(m);
  SlotDraws draws;
  for (std::uint64_t t = 0; t < cfg.slots; ++t) {
    fill_draws(cfg.seed, t, m, draws);
    auto [next, out] = model.step(state, draws, t);

    report.su_arrivals += out.su_arrival;
    report.su_departures += out.su_departure;
    std::uint64_t pu_deps = 0;
    for (auto d : out.pu_departures) pu_deps += d;
    report.pu_departures += pu_deps;

    if (t >= warmup) {
      const std::uint64_t i = t - warmup;
      const bool opportunity = cfg.mode == SystemMode::kDominant || state.secondary > 0;
      su_rate.add(i, out.su_channel_success ? 1 : 0, opportunity ? 1 : 0);
      pu_rate.add(i, pu_deps, out.occupancy.count_busy());

      slope.add(static_cast<double>(t), static_cast<double>(state.secondary));
      sum_q_s += static_cast<double>(state.secondary);
      double q_p = 0.0;
      for (auto q : state.primary) q_p += static_cast<double>(q);
      sum_q_p += q_p / m;
      real_departures += out.su_departure;
      report.collisions += out.collision ? 1 : 0;
    }

    if (observer) observer(next, out);
    state = std::move(next);
  }

  const auto n = static_cast<double>(measured);
  report.empirical_mu_s = su_rate.mean();
  report.std_err_mu_s = su_rate.std_err();
  report.empirical_mu_p = pu_rate.mean();
  report.std_err_mu_p = pu_rate.std_err();
  report.throughput_s = static_cast<double>(real_departures) / n;
  report.mean_queue_s = sum_q_s / n;
  report.mean_queue_p = sum_q_p / n;
  report.final_queue_s = state.secondary;

  report.queue_slope_s = slope.slope();
  if (report.queue_slope_s > cfg.thresholds.unstable_slope) {
    report.stability_verdict_s = StabilityVerdict::kUnstable;
  } else if (report.queue_slope_s < cfg.thresholds.stable_slope) {
    report.stability_verdict_s = StabilityVerdict::kStable;
  } else {
    report.stability_verdict_s = StabilityVerdict::kInconclusive;
  }
  return report;
}

SlotObserver trace_writer(std::ostream& out) {
  return [&out](const QueueState& state, const SlotOutcome& o) {
    nlohmann::ordered_json j;
    j["slot"] = o.slot;
    j["occupancy"] = bits(o.occupancy.busy);
    j["sensing"] = bits(o.sensing.declared_idle);
    j["su_transmit"] = o.su_transmit;
    j["su_dummy"] = o.su_dummy;
    j["collision"] = o.collision;
    j["pu_departures"] = o.pu_departures;
    j["pu_arrivals"] = o.pu_arrivals;
    j["su_departure"] = o.su_departure;
    j["su_arrival"] = o.su_arrival;
    j["queue_p"] = state.primary;
    j["queue_s"] = state.secondary;
    out << j.dump() << '\n';
  };
}

BoundaryRecord boundary_check(const ScenarioConfig& scenario, std::uint64_t slots,
                              const std::vector<std::uint64_t>& seeds) {
  BoundaryRecord record;
  record.mu_s = secondary_service_rate(scenario.channel, scenario.sensing, scenario.traffic);
  record.lambda_s = scenario.traffic.lambda_s;
  const double target = std::min(record.lambda_s, record.mu_s);

  for (const auto seed : seeds) {
    SimConfig cfg;
    cfg.scenario = scenario;
    cfg.slots = slots;
    cfg.seed = seed;

    BoundaryRun r;
    r.seed = seed;
    cfg.mode = SystemMode::kDominant;
    r.dominant = run(cfg).stability_verdict_s;
    cfg.mode = SystemMode::kOriginal;
    const SimReport original = run(cfg);
    r.original = original.stability_verdict_s;
    r.throughput_original = original.throughput_s;
    r.gap = std::abs(original.throughput_s - target);
    record.runs.push_back(r);
  }
  return record;
}

}  // namespace specagg
