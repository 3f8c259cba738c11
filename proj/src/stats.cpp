#include "ringsim/stats.hpp"

#include <cmath>
#include <cstdio>

#include "ringsim/ring_route.hpp"
#include "ringsim/topology.hpp"
#include "ringsim/traffic.hpp"

namespace ringsim {

namespace {
std::string fmt_latency(double v) {
  char buf[32];
  if (std::isnan(v)) return "nan";
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace

const char* StatsReport::csv_header() {
  return "design,pattern,k,rate,seed,packets_delivered,avg_latency,min_latency,"
         "max_latency,throughput,undrained";
}

std::string StatsReport::csv_row() const {
  char head[128];
  std::snprintf(head, sizeof head, "%s,%s,%d,%.6g,%llu,%lld,", to_string(design),
                to_string(pattern), k, rate, static_cast<unsigned long long>(seed),
                static_cast<long long>(packets_delivered));
  return std::string(head) + fmt_latency(avg_latency) + "," + fmt_latency(min_latency) +
         "," + fmt_latency(max_latency) + "," + fmt_latency(throughput) + "," +
         (undrained ? "1" : "0");
}

std::optional<double> find_saturation(std::span<const SweepPoint> sweep) {
  RINGSIM_CHECK(sweep.size() >= 2, "find_saturation needs at least two points");
  double no_load = sweep.front().avg_latency;
  for (const SweepPoint& p : sweep) {
    if (p.undrained || p.avg_latency >= 2.0 * no_load) return p.rate;
  }
  return std::nullopt;
}

int uncontended_path_latency(RouterDesign d, NodeId src, NodeId dest, int k,
                             int link_latency) {
  NodeCoord s = coord_of(src, k), t = coord_of(dest, k);
  int links = std::abs(s.x - t.x) + std::abs(s.y - t.y);

  if (d != RouterDesign::Ring) {
    int stages = d == RouterDesign::Base1 ? 4 : 2;
    return stages * (links + 1) + link_latency * links;
  }

  if (src == dest) return ring_route(ExchangeId::Core, ExchangeId::Core).hop_count();
  int latency = 0;
  NodeCoord here = s;
  ExchangeId entry = ExchangeId::Core;
  for (;;) {
    PortDirection out = dor_output(here, t);
    ExchangeId exit = exchange_for(out);
    latency += ring_route(entry, exit).hop_count();
    if (out == PortDirection::Local) break;
    latency += link_latency - 1;
    here = neighbor(here, out);
    entry = exchange_for(opposite(out));
  }
  return latency;
}

double zero_load_latency_oracle(RouterDesign d, TrafficPattern p, int k, int link_latency,
                                const PatternParams& params) {
  int n = k * k;
  auto f = [&](NodeId s, NodeId t) {
    return static_cast<double>(uncontended_path_latency(d, s, t, k, link_latency));
  };

  switch (p) {
    case TrafficPattern::Uniform: {
      double sum = 0.0;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (s != t) sum += f(static_cast<NodeId>(s), static_cast<NodeId>(t));
      return sum / (static_cast<double>(n) * (n - 1));
    }
    case TrafficPattern::Bitcomp:
    case TrafficPattern::Shuffle:
    case TrafficPattern::Transpose: {
      double sum = 0.0;
      for (int s = 0; s < n; ++s)
        sum += f(static_cast<NodeId>(s), permutation_dest(p, static_cast<NodeId>(s), k));
      return sum / n;
    }
    case TrafficPattern::Hotspot: {
      const std::vector<NodeId>& hs =
          params.hotspot_nodes.empty() ? default_hotspot_nodes(k) : params.hotspot_nodes;
      double hf = params.hotspot_fraction;
      double sum = 0.0;
      for (int s = 0; s < n; ++s) {
        double hot = 0.0;
        for (NodeId h : hs) hot += f(static_cast<NodeId>(s), h);
        hot /= static_cast<double>(hs.size());
        double uni = 0.0;
        for (int t = 0; t < n; ++t)
          if (t != s) uni += f(static_cast<NodeId>(s), static_cast<NodeId>(t));
        uni /= (n - 1);
        sum += hf * hot + (1.0 - hf) * uni;
      }
      return sum / n;
    }
    case TrafficPattern::Asymmetric: {
      int half = k / 2;
      double sum = 0.0;
      for (int s = 0; s < n; ++s) {
        NodeCoord c = coord_of(static_cast<NodeId>(s), k);
        int pos = params.asymmetric_axis == 'x' ? c.x : c.y;
        int lo = pos < half ? half : 0;
        int hi = pos < half ? k - 1 : half - 1;
        double acc = 0.0;
        int count = 0;
        for (int axis_val = lo; axis_val <= hi; ++axis_val) {
          for (int other = 0; other < k; ++other) {
            NodeCoord dc = params.asymmetric_axis == 'x' ? NodeCoord{axis_val, other}
                                                         : NodeCoord{other, axis_val};
            acc += f(static_cast<NodeId>(s), id_of(dc, k));
            ++count;
          }
        }
        sum += acc / count;
      }
      return sum / n;
    }
  }
  return 0.0;
}

std::string StallReport::summary() const {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "stall at cycle %u: %lld flits in network, %zu stuck >= window (first packet "
                "%u waited %u)",
                cycle, static_cast<long long>(in_network), stuck.size(),
                stuck.empty() ? 0 : stuck.front().packet,
                stuck.empty() ? 0 : stuck.front().waited);
  return buf;
}

std::optional<StallReport> progress_scan(const Network& net, Cycle now, Cycle window) {
  StallReport report;
  report.cycle = now;
  report.in_network = net.flits_in_network();
  net.for_each_flit([&](const Flit& f) {
    Cycle waited = now - f.last_move;
    if (waited >= window) report.stuck.push_back({f.packet, waited});
  });
  if (report.stuck.empty()) return std::nullopt;
  return report;
}

}  // namespace ringsim
