#pragma once

#include <string>

#include "specagg/analysis.hpp"
#include "specagg/channel_model.hpp"
#include "specagg/sensing_model.hpp"

namespace specagg {

/// One operating point: channel, sensing and traffic parameters.
struct ScenarioConfig {
  ChannelParams channel;
  SensingParams sensing;
  TrafficParams traffic;
  std::string label;

  void validate() const {
    channel.validate();
    sensing.validate();
    traffic.validate();
  }
};

}  // namespace specagg
