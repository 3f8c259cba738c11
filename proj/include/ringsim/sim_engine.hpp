#pragma once

#include <functional>
#include <vector>

#include "ringsim/config.hpp"
#include "ringsim/network.hpp"
#include "ringsim/stats.hpp"
#include "ringsim/traffic.hpp"

namespace ringsim {

enum class SimPhase : uint8_t { Warmup, Measure, Drain, Done };

// Optional instrumentation; everything is off by default.
struct RunHooks {
  EventHook events;
  bool conservation_every_cycle = false;
  Cycle stall_window = 10000;
  Cycle stall_scan_interval = 1000;
  Cycle freeze_at = 0;  // test hook: freeze all arbiters at this cycle (0 = never)
  const std::vector<TraceEvent>* trace = nullptr;  // replaces synthetic generation
  std::function<void(const Network&, Cycle)> on_drain_start;
  std::function<void(const Flit&, Cycle)> on_delivery;
};

// Runs warmup / measure / drain to completion. Deterministic given
// (config, rng_seed). Throws ConfigError before cycle 0 on invalid
// configuration and SimFault on any internal inconsistency or stall.
StatsReport run_simulation(const SimConfig& config, const RunHooks* hooks = nullptr);

}  // namespace ringsim
