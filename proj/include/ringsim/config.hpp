#pragma once

#include <cstdint>
#include <vector>

#include "ringsim/types.hpp"

namespace ringsim {

// Hotspot / asymmetric pattern knobs. The defaults pin the configuration used
// by the acceptance experiments: 10% of hotspot traffic goes to the four
// center nodes, asymmetric splits the mesh into left/right halves along x.
struct PatternParams {
  double hotspot_fraction = 0.1;
  std::vector<NodeId> hotspot_nodes;  // empty = the 4 mesh-center nodes
  char asymmetric_axis = 'x';         // 'x' or 'y'
};

struct SimConfig {
  int k = 8;  // mesh radix, k x k
  RouterDesign design = RouterDesign::Ring;
  int flit_width_bits = 128;  // carried for reporting; all datapaths are one flit wide
  int vc_depth_flits = 8;
  int vcs_per_buffer = 0;  // 0 = design default (8 for base1/base2, 2 for ring)
  int packet_length_flits = 1;
  double injection_rate = 0.0;  // flits/cycle/node
  TrafficPattern pattern = TrafficPattern::Uniform;
  Cycle warmup_cycles = 10000;
  Cycle measure_cycles = 50000;
  Cycle max_drain_cycles = 100000;
  uint64_t rng_seed = 1;
  int link_latency_cycles = 1;
  PatternParams pattern_params;

  int nodes() const { return k * k; }
  int effective_vcs() const {
    if (vcs_per_buffer > 0) return vcs_per_buffer;
    return design == RouterDesign::Ring ? 2 : 8;
  }
  int total_vcs_per_router() const {
    return design == RouterDesign::Ring ? 5 * 3 * effective_vcs() : 5 * effective_vcs();
  }

  // Throws ConfigError on the first violated invariant.
  void validate() const;
};

}  // namespace ringsim
