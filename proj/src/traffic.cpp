#include "ringsim/traffic.hpp"

#include <charconv>
#include <string>

#include "ringsim/topology.hpp"

namespace ringsim {

namespace {
int log2_exact(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}
}  // namespace

NodeId permutation_dest(TrafficPattern p, NodeId src, int k) {
  int n = k * k;
  switch (p) {
    case TrafficPattern::Bitcomp:
      return static_cast<NodeId>(~src & (n - 1));
    case TrafficPattern::Shuffle: {
      int b = log2_exact(n);
      return static_cast<NodeId>(((src << 1) | (src >> (b - 1))) & (n - 1));
    }
    case TrafficPattern::Transpose: {
      NodeCoord c = coord_of(src, k);
      return id_of({c.y, c.x}, k);
    }
    default:
      RINGSIM_CHECK(false, "not a permutation pattern");
  }
  return 0;
}

std::vector<NodeId> default_hotspot_nodes(int k) {
  int lo = k / 2 - 1, hi = k / 2;
  if (lo < 0) lo = 0;
  std::vector<NodeId> nodes;
  nodes.push_back(id_of({lo, lo}, k));
  if (hi != lo) {
    nodes.push_back(id_of({hi, lo}, k));
    nodes.push_back(id_of({lo, hi}, k));
    nodes.push_back(id_of({hi, hi}, k));
  }
  return nodes;
}

namespace {
NodeId uniform_excluding_self(NodeId src, int n, Rng& rng) {
  NodeId d = static_cast<NodeId>(rng.below(static_cast<uint64_t>(n - 1)));
  if (d >= src) ++d;
  return d;
}
}  // namespace

NodeId dest_for(TrafficPattern p, NodeId src, int k, Rng& rng, const PatternParams& params) {
  int n = k * k;
  switch (p) {
    case TrafficPattern::Uniform:
      return uniform_excluding_self(src, n, rng);
    case TrafficPattern::Bitcomp:
    case TrafficPattern::Shuffle:
    case TrafficPattern::Transpose:
      return permutation_dest(p, src, k);
    case TrafficPattern::Hotspot: {
      if (rng.uniform01() < params.hotspot_fraction) {
        const std::vector<NodeId>& hs =
            params.hotspot_nodes.empty() ? default_hotspot_nodes(k) : params.hotspot_nodes;
        return hs[rng.below(hs.size())];
      }
      return uniform_excluding_self(src, n, rng);
    }
    case TrafficPattern::Asymmetric: {
      NodeCoord c = coord_of(src, k);
      int half = k / 2;
      int pos = params.asymmetric_axis == 'x' ? c.x : c.y;
      int lo, hi;  // destination coordinate range along the axis
      if (pos < half) {
        lo = half;
        hi = k - 1;
      } else {
        lo = 0;
        hi = half - 1;
      }
      int axis_val = lo + static_cast<int>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
      int other_val = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
      if (params.asymmetric_axis == 'x') return id_of({axis_val, other_val}, k);
      return id_of({other_val, axis_val}, k);
    }
  }
  return 0;
}

std::vector<TraceEvent> load_trace(std::istream& in, int k) {
  std::vector<TraceEvent> events;
  std::string line;
  int line_no = 0;
  int n = k * k;
  auto fail = [&](const std::string& why) {
    throw ConfigError("trace line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    line = line.substr(start);

    long long fields[4];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int f = 0; f < 4; ++f) {
      auto [next, ec] = std::from_chars(p, end, fields[f]);
      if (ec != std::errc{}) fail("expected cycle,src,dest,size_flits");
      p = next;
      if (f < 3) {
        if (p >= end || *p != ',') fail("expected cycle,src,dest,size_flits");
        ++p;
      }
    }
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p != end) fail("trailing characters");
    if (fields[0] < 0) fail("negative cycle");
    if (fields[1] < 0 || fields[1] >= n) fail("src node out of range");
    if (fields[2] < 0 || fields[2] >= n) fail("dest node out of range");
    if (fields[3] <= 0) fail("size_flits must be positive");
    if (!events.empty() && static_cast<Cycle>(fields[0]) < events.back().cycle)
      fail("cycles must be non-decreasing");
    events.push_back({static_cast<Cycle>(fields[0]), static_cast<NodeId>(fields[1]),
                      static_cast<NodeId>(fields[2]), static_cast<int>(fields[3])});
  }
  return events;
}

}  // namespace ringsim
