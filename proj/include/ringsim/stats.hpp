#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringsim/config.hpp"
#include "ringsim/network.hpp"
#include "ringsim/types.hpp"

namespace ringsim {

// Per-run aggregates. Latency samples cover packets generated during the
// Measure phase, generation to tail ejection, source queuing included.
struct StatsReport {
  RouterDesign design = RouterDesign::Ring;
  TrafficPattern pattern = TrafficPattern::Uniform;
  int k = 0;
  double rate = 0.0;
  uint64_t seed = 0;

  int64_t packets_delivered = 0;  // measure-generated packets delivered
  int64_t flits_delivered = 0;
  double avg_latency = 0.0;  // NaN when no packets were measured
  double min_latency = 0.0;
  double max_latency = 0.0;
  double throughput = 0.0;  // measure-generated flits delivered per cycle per node
  bool undrained = false;

  // Diagnostics, not part of the CSV contract.
  int64_t generated_packets = 0;
  int64_t measure_packets = 0;
  int64_t delivered_all_packets = 0;
  int64_t stranded_network = 0;
  int64_t stranded_sources = 0;
  Cycle end_cycle = 0;

  static const char* csv_header();
  std::string csv_row() const;
};

struct SweepPoint {
  double rate = 0.0;
  double avg_latency = 0.0;
  bool undrained = false;
};

// Smallest swept rate whose latency is at least twice the no-load latency
// (the first point's latency); undrained points count as saturated.
std::optional<double> find_saturation(std::span<const SweepPoint> sweep);

// Analytic latency of an uncontended packet. Ring routers cost their routing
// table hop count per router with the port-E readout reaching the next
// buffer within the hop cycle (extra wire latency adds link_latency-1 per
// link); conventional routers cost their stage count per router plus
// link_latency per link between switch traversal and the next arrival.
int uncontended_path_latency(RouterDesign d, NodeId src, NodeId dest, int k,
                             int link_latency = 1);

// Expectation of uncontended_path_latency over the pattern's (src, dest)
// distribution, by exhaustive enumeration.
double zero_load_latency_oracle(RouterDesign d, TrafficPattern p, int k,
                                int link_latency = 1, const PatternParams& params = {});

struct StallReport {
  Cycle cycle = 0;
  int64_t in_network = 0;
  struct Stuck {
    PacketId packet = 0;
    Cycle waited = 0;
  };
  std::vector<Stuck> stuck;
  std::string summary() const;
};

// Flags any in-network flit that has not moved for `window` cycles.
std::optional<StallReport> progress_scan(const Network& net, Cycle now, Cycle window);

}  // namespace ringsim
