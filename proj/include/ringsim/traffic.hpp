#pragma once

#include <istream>
#include <vector>

#include "ringsim/config.hpp"
#include "ringsim/rng.hpp"
#include "ringsim/types.hpp"

namespace ringsim {

// Destination of a permutation pattern (bitcomp, shuffle, transpose); pure in
// the source, independent of any generator state.
NodeId permutation_dest(TrafficPattern p, NodeId src, int k);

// The four mesh-center nodes, the default hotspot set.
std::vector<NodeId> default_hotspot_nodes(int k);

// Draws a destination for `src` under the given pattern. Stochastic patterns
// consume the run's generator; permutation patterns ignore it.
NodeId dest_for(TrafficPattern p, NodeId src, int k, Rng& rng, const PatternParams& params);

struct TraceEvent {
  Cycle cycle = 0;
  NodeId src = 0;
  NodeId dest = 0;
  int size_flits = 1;
};

// Parses "cycle,src,dest,size_flits" lines; '#' starts a comment. Throws
// ConfigError naming the offending line on malformed input, out-of-range
// nodes, or cycles that go backwards.
std::vector<TraceEvent> load_trace(std::istream& in, int k);

}  // namespace ringsim
