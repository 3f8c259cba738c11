#include "ringsim/config.hpp"

#include <string>

namespace ringsim {

const char* to_string(RouterDesign d) {
  switch (d) {
    case RouterDesign::Base1: return "base1";
    case RouterDesign::Base2: return "base2";
    case RouterDesign::Ring: return "ring";
  }
  return "?";
}

const char* to_string(PortDirection p) {
  switch (p) {
    case PortDirection::North: return "north";
    case PortDirection::South: return "south";
    case PortDirection::East: return "east";
    case PortDirection::West: return "west";
    case PortDirection::Local: return "local";
  }
  return "?";
}

const char* to_string(TrafficPattern p) {
  switch (p) {
    case TrafficPattern::Uniform: return "uniform";
    case TrafficPattern::Bitcomp: return "bitcomp";
    case TrafficPattern::Shuffle: return "shuffle";
    case TrafficPattern::Transpose: return "transpose";
    case TrafficPattern::Hotspot: return "hotspot";
    case TrafficPattern::Asymmetric: return "asymmetric";
  }
  return "?";
}

bool parse_design(const std::string& s, RouterDesign& out) {
  if (s == "base1") out = RouterDesign::Base1;
  else if (s == "base2") out = RouterDesign::Base2;
  else if (s == "ring") out = RouterDesign::Ring;
  else return false;
  return true;
}

bool parse_pattern(const std::string& s, TrafficPattern& out) {
  if (s == "uniform") out = TrafficPattern::Uniform;
  else if (s == "bitcomp") out = TrafficPattern::Bitcomp;
  else if (s == "shuffle") out = TrafficPattern::Shuffle;
  else if (s == "transpose") out = TrafficPattern::Transpose;
  else if (s == "hotspot") out = TrafficPattern::Hotspot;
  else if (s == "asymmetric") out = TrafficPattern::Asymmetric;
  else return false;
  return true;
}

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

void SimConfig::validate() const {
  if (k < 2) throw ConfigError("k must be >= 2");
  if (flit_width_bits <= 0) throw ConfigError("flit_width_bits must be positive");
  if (vc_depth_flits <= 0) throw ConfigError("vc_depth_flits must be positive");
  if (vcs_per_buffer < 0) throw ConfigError("vcs_per_buffer must be positive");
  if (packet_length_flits <= 0) throw ConfigError("packet_length_flits must be positive");
  if (vc_depth_flits < packet_length_flits)
    throw ConfigError("vc_depth_flits must be >= packet_length_flits");
  if (injection_rate < 0.0 || injection_rate > 1.0)
    throw ConfigError("injection_rate must be in [0,1]");
  if (link_latency_cycles <= 0) throw ConfigError("link_latency_cycles must be positive");
  if ((pattern == TrafficPattern::Bitcomp || pattern == TrafficPattern::Shuffle) &&
      !is_power_of_two(k * k)) {
    throw ConfigError(std::string(to_string(pattern)) +
                      " requires a power-of-two node count (k*k)");
  }
  const auto& pp = pattern_params;
  if (pp.hotspot_fraction < 0.0 || pp.hotspot_fraction > 1.0)
    throw ConfigError("hotspot_fraction must be in [0,1]");
  for (NodeId n : pp.hotspot_nodes) {
    if (n >= nodes()) throw ConfigError("hotspot node id out of range");
  }
  if (pp.asymmetric_axis != 'x' && pp.asymmetric_axis != 'y')
    throw ConfigError("asymmetric_axis must be 'x' or 'y'");
}

}  // namespace ringsim
