#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "specagg/scenario.hpp"
#include "specagg/sensing_model.hpp"

namespace specagg {

enum class SystemMode {
  kDominant,  ///< an empty secondary queue still sends dummy packets
  kOriginal,  ///< the secondary user stays silent when its queue is empty
};

enum class StabilityVerdict { kStable, kUnstable, kInconclusive };

const char* to_string(SystemMode mode);
const char* to_string(StabilityVerdict verdict);

/// Slope thresholds (packets/slot) for the queue-growth diagnostic.
struct StabilityThresholds {
  double unstable_slope = 0.01;
  double stable_slope = 0.001;
};

struct SimConfig {
  ScenarioConfig scenario;
  SystemMode mode = SystemMode::kDominant;
  std::uint64_t slots = 100000;
  std::uint64_t seed = 1;
  /// Slots excluded from statistics; defaults to 10% of the horizon.
  std::optional<std::uint64_t> warmup;
  int batches = 100;
  StabilityThresholds thresholds;

  std::uint64_t effective_warmup() const { return warmup.value_or(slots / 10); }
  void validate() const;
};

struct QueueState {
  std::vector<std::uint64_t> primary;
  std::uint64_t secondary = 0;

  static QueueState empty(int m_bands) {
    return QueueState{std::vector<std::uint64_t>(static_cast<std::size_t>(m_bands), 0), 0};
  }
  bool operator==(const QueueState&) const = default;
};

/// Every uniform a slot consumes. Drawn for all bands and links whatever the
/// queue contents, so two systems fed the same draws are coupled.
struct SlotDraws {
  std::vector<double> sensing;      ///< one per band
  std::vector<double> pu_channel;   ///< one per primary link
  double su_channel = 1.0;
  std::vector<double> pu_arrival;   ///< one per primary queue
  double su_arrival = 1.0;

  /// Draws for slot `slot` of the run seeded with `seed`.
  static SlotDraws generate(std::uint64_t seed, std::uint64_t slot, int m_bands);
};

struct SlotOutcome {
  std::uint64_t slot = 0;
  BandState occupancy;
  SensingDecision sensing;
  bool su_transmit = false;
  bool su_dummy = false;             ///< transmission carried a dummy packet
  bool collision = false;            ///< some band carried two transmissions
  bool su_channel_success = false;   ///< packet (real or dummy) got through
  std::vector<std::uint8_t> pu_departures;
  std::vector<std::uint8_t> pu_arrivals;
  std::uint8_t su_departure = 0;
  std::uint8_t su_arrival = 0;
};

/// Precomputed per-scenario quantities used every slot.
class SlotModel {
 public:
  SlotModel(const ScenarioConfig& scenario, SystemMode mode);

  int m_bands() const { return m_bands_; }
  SystemMode mode() const { return mode_; }

  /// Runs one slot: primary transmissions, sensing, aggregated secondary
  /// transmission, collisions, channel draws, then late arrivals.
  std::pair<QueueState, SlotOutcome> step(const QueueState& state, const SlotDraws& draws,
                                          std::uint64_t slot = 0) const;

 private:
  int m_bands_;
  SystemMode mode_;
  SensingParams sensing_;
  double pu_success_;
  double lambda_p_;
  double lambda_s_;
  std::vector<double> su_success_;  // indexed by number of aggregated bands
};

/// One slot with draws taken from the seeded stream.
std::pair<QueueState, SlotOutcome> step(const QueueState& state, const SimConfig& cfg,
                                        std::uint64_t slot);

struct SimReport {
  double empirical_mu_p = 0.0;
  double empirical_mu_s = 0.0;
  double throughput_s = 0.0;
  double mean_queue_s = 0.0;
  double mean_queue_p = 0.0;
  StabilityVerdict stability_verdict_s = StabilityVerdict::kInconclusive;
  double queue_slope_s = 0.0;
  std::uint64_t collisions = 0;
  double std_err_mu_s = 0.0;
  double std_err_mu_p = 0.0;

  std::uint64_t slots = 0;
  std::uint64_t warmup = 0;
  // Full-horizon accounting.
  std::uint64_t su_arrivals = 0;
  std::uint64_t su_departures = 0;
  std::uint64_t final_queue_s = 0;
  std::uint64_t pu_departures = 0;
};

/// Called after every slot with the post-slot state.
using SlotObserver = std::function<void(const QueueState&, const SlotOutcome&)>;

/// Simulates `cfg.slots` slots from empty queues. Deterministic in cfg.
SimReport run(const SimConfig& cfg, const SlotObserver& observer = {});

/// Writes one newline-delimited JSON record per slot.
SlotObserver trace_writer(std::ostream& out);

struct BoundaryRun {
  std::uint64_t seed = 0;
  StabilityVerdict dominant = StabilityVerdict::kInconclusive;
  StabilityVerdict original = StabilityVerdict::kInconclusive;
  double throughput_original = 0.0;
  double gap = 0.0;  ///< |throughput_s(ORIGINAL) - min(lambda_s, mu_s)|
};

struct BoundaryRecord {
  double mu_s = 0.0;
  double lambda_s = 0.0;
  std::vector<BoundaryRun> runs;
};

/// Runs DOMINANT and ORIGINAL with the same seed for each entry of `seeds`.
BoundaryRecord boundary_check(const ScenarioConfig& scenario, std::uint64_t slots,
                              const std::vector<std::uint64_t>& seeds);

}  // namespace specagg
