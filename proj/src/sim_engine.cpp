#include "ringsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringsim/conventional_network.hpp"
#include "ringsim/ring_network.hpp"
#include "ringsim/rng.hpp"
#include "ringsim/topology.hpp"

namespace ringsim {

std::unique_ptr<Network> make_network(const SimConfig& config) {
  if (config.design == RouterDesign::Ring) return std::make_unique<RingNetwork>(config);
  return std::make_unique<ConventionalNetwork>(config);
}

namespace {

struct Accum {
  int64_t generated_flits = 0;
  int64_t generated_packets = 0;
  int64_t measure_packets = 0;
  int64_t delivered_flits_all = 0;
  int64_t delivered_packets_all = 0;
  int64_t measure_flits_delivered = 0;
  int64_t measure_packets_delivered = 0;
  double latency_sum = 0.0;
  double latency_min = std::numeric_limits<double>::infinity();
  double latency_max = 0.0;
  std::vector<uint8_t> tail_seen;
};

}  // namespace

StatsReport run_simulation(const SimConfig& config, const RunHooks* hooks) {
  config.validate();
  static const RunHooks kNoHooks;
  const RunHooks& h = hooks ? *hooks : kNoHooks;

  const int n = config.nodes();
  auto net = make_network(config);
  if (h.events) net->set_event_hook(h.events);

  std::vector<SourceQueue> sources(static_cast<size_t>(n));
  std::vector<Flit> delivered;
  Rng rng(config.rng_seed);
  Accum acc;

  const Cycle inj_end = config.warmup_cycles + config.measure_cycles;
  Cycle gen_horizon = inj_end;  // first cycle with no further generation
  if (h.trace && !h.trace->empty()) {
    for (const TraceEvent& ev : *h.trace) {
      RINGSIM_CHECK(ev.src < n && ev.dest < n, "trace node out of range for this mesh");
    }
    gen_horizon = std::max(gen_horizon, h.trace->back().cycle + 1);
  }
  const Cycle deadline = gen_horizon + config.max_drain_cycles;

  auto in_measure = [&](Cycle gen) {
    return gen >= config.warmup_cycles && gen < inj_end;
  };

  auto make_packet = [&](NodeId src, NodeId dest, int len, Cycle t) {
    PacketId pkt = static_cast<PacketId>(acc.generated_packets++);
    if (in_measure(t)) ++acc.measure_packets;
    acc.generated_flits += len;
    PortDirection route = dor_output(coord_of(src, config.k), coord_of(dest, config.k));
    for (int i = 0; i < len; ++i) {
      Flit f;
      f.packet = pkt;
      f.gen_cycle = t;
      f.last_move = t;
      f.src = src;
      f.dest = dest;
      f.seq = static_cast<uint16_t>(i);
      f.route_port = route;
      f.head = i == 0;
      f.tail = i == len - 1;
      sources[src].flits.push_back(f);
    }
    if (h.events) h.events({t, EvKind::Generated, pkt, 0, src, 0, 0, 0});
  };

  auto record_delivery = [&](const Flit& f, Cycle t) {
    ++acc.delivered_flits_all;
    if (f.tail) {
      if (acc.tail_seen.size() <= f.packet) acc.tail_seen.resize(f.packet + 1, 0);
      RINGSIM_CHECK(!acc.tail_seen[f.packet], "duplicate delivery of a packet id");
      acc.tail_seen[f.packet] = 1;
      ++acc.delivered_packets_all;
    }
    if (in_measure(f.gen_cycle)) {
      ++acc.measure_flits_delivered;
      if (f.tail) {
        double lat = static_cast<double>(t - f.gen_cycle);
        acc.latency_sum += lat;
        acc.latency_min = std::min(acc.latency_min, lat);
        acc.latency_max = std::max(acc.latency_max, lat);
        ++acc.measure_packets_delivered;
      }
    }
    if (h.on_delivery) h.on_delivery(f, t);
  };

  size_t trace_cursor = 0;
  int64_t last_moves = 0;
  Cycle last_progress = 0;
  bool undrained = false;
  Cycle end_cycle = 0;

  for (Cycle t = 0;; ++t) {
    if (h.trace) {
      while (trace_cursor < h.trace->size() && (*h.trace)[trace_cursor].cycle == t) {
        const TraceEvent& ev = (*h.trace)[trace_cursor++];
        make_packet(ev.src, ev.dest, ev.size_flits, t);
      }
    } else if (t < inj_end && config.injection_rate > 0.0) {
      for (int node = 0; node < n; ++node) {
        if (!rng.bernoulli(config.injection_rate)) continue;
        NodeId dest = dest_for(config.pattern, static_cast<NodeId>(node), config.k, rng,
                               config.pattern_params);
        make_packet(static_cast<NodeId>(node), dest, config.packet_length_flits, t);
      }
    }

    if (t == gen_horizon && h.on_drain_start) h.on_drain_start(*net, t);
    if (h.freeze_at != 0 && t == h.freeze_at) net->freeze_arbiters(true);

    net->tick(t, sources, delivered);
    for (const Flit& f : delivered) record_delivery(f, t);
    delivered.clear();

    // Progress monitor: O(1) global movement check plus a periodic per-flit
    // scan for partial starvation.
    int64_t moves = net->total_moves();
    if (moves != last_moves) {
      last_moves = moves;
      last_progress = t;
    } else if (net->flits_in_network() > 0 && t - last_progress >= h.stall_window) {
      StallReport r;
      r.cycle = t;
      r.in_network = net->flits_in_network();
      throw SimFault("progress monitor: " + r.summary());
    }
    if (h.stall_scan_interval != 0 && t != 0 && t % h.stall_scan_interval == 0 &&
        net->flits_in_network() > 0) {
      if (auto stall = progress_scan(*net, t, h.stall_window)) {
        throw SimFault("progress monitor: " + stall->summary());
      }
    }

    if (h.conservation_every_cycle) {
      int64_t queued = 0;
      for (const SourceQueue& q : sources) queued += static_cast<int64_t>(q.flits.size());
      RINGSIM_CHECK(acc.generated_flits ==
                        acc.delivered_flits_all + net->flits_in_network() + queued,
                    "flit conservation violated");
      net->check_invariants();
    }

    bool gen_done = h.trace ? trace_cursor == h.trace->size() : t + 1 >= inj_end;
    if (gen_done) {
      int64_t queued = 0;
      for (const SourceQueue& q : sources) queued += static_cast<int64_t>(q.flits.size());
      int64_t remaining = net->flits_in_network() + queued;
      if (remaining == 0) {
        end_cycle = t;
        break;
      }
      if (t + 1 >= deadline) {
        undrained = true;
        end_cycle = t;
        break;
      }
    }
  }

  StatsReport rep;
  rep.design = config.design;
  rep.pattern = config.pattern;
  rep.k = config.k;
  rep.rate = h.trace ? 0.0 : config.injection_rate;
  rep.seed = config.rng_seed;
  rep.packets_delivered = acc.measure_packets_delivered;
  rep.flits_delivered = acc.measure_flits_delivered;
  if (acc.measure_packets_delivered > 0) {
    rep.avg_latency = acc.latency_sum / static_cast<double>(acc.measure_packets_delivered);
    rep.min_latency = acc.latency_min;
    rep.max_latency = acc.latency_max;
  } else {
    rep.avg_latency = rep.min_latency = rep.max_latency =
        std::numeric_limits<double>::quiet_NaN();
  }
  rep.throughput =
      config.measure_cycles > 0
          ? static_cast<double>(acc.measure_flits_delivered) /
                (static_cast<double>(config.measure_cycles) * static_cast<double>(n))
          : 0.0;
  rep.undrained = undrained;
  rep.generated_packets = acc.generated_packets;
  rep.measure_packets = acc.measure_packets;
  rep.delivered_all_packets = acc.delivered_packets_all;
  rep.stranded_network = net->flits_in_network();
  int64_t queued = 0;
  for (const SourceQueue& q : sources) queued += static_cast<int64_t>(q.flits.size());
  rep.stranded_sources = queued;
  rep.end_cycle = end_cycle;
  return rep;
}

}  // namespace ringsim
