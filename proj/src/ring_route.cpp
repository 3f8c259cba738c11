#include "ringsim/ring_route.hpp"

namespace ringsim {

namespace {

constexpr ExchangeId C = ExchangeId::Core;
constexpr ExchangeId N = ExchangeId::North;
constexpr ExchangeId S = ExchangeId::South;
constexpr ExchangeId E = ExchangeId::East;
constexpr ExchangeId W = ExchangeId::West;

constexpr RingRoute make(std::initializer_list<ExchangeId> stops) {
  RingRoute r{};
  for (ExchangeId e : stops) r.stops[r.len++] = e;
  return r;
}

// Shortest directed paths on the two rings with core transit forbidden,
// frozen as a table. Indexed [entry][exit].
const RingRoute kRoutes[5][5] = {
    // entry Core
    {make({C, N, S, E, W, C}), make({C, N}), make({C, N, S}), make({C, W, E}), make({C, W})},
    // entry North
    {make({N, C}), RingRoute{}, make({N, S}), make({N, S, E}), make({N, S, E, W})},
    // entry South
    {make({S, N, C}), make({S, N}), RingRoute{}, make({S, E}), make({S, E, W})},
    // entry East
    {make({E, W, C}), make({E, S, N}), make({E, S}), RingRoute{}, make({E, W})},
    // entry West
    {make({W, C}), make({W, E, S, N}), make({W, E, S}), make({W, E}), RingRoute{}},
};

}  // namespace

ExchangeId cw_successor(ExchangeId e) {
  switch (e) {
    case ExchangeId::Core: return ExchangeId::North;
    case ExchangeId::North: return ExchangeId::South;
    case ExchangeId::South: return ExchangeId::East;
    case ExchangeId::East: return ExchangeId::West;
    case ExchangeId::West: return ExchangeId::Core;
  }
  return ExchangeId::Core;
}

ExchangeId cw_predecessor(ExchangeId e) {
  switch (e) {
    case ExchangeId::Core: return ExchangeId::West;
    case ExchangeId::North: return ExchangeId::Core;
    case ExchangeId::South: return ExchangeId::North;
    case ExchangeId::East: return ExchangeId::South;
    case ExchangeId::West: return ExchangeId::East;
  }
  return ExchangeId::Core;
}

ExchangeId exchange_for(PortDirection p) {
  switch (p) {
    case PortDirection::Local: return ExchangeId::Core;
    case PortDirection::North: return ExchangeId::North;
    case PortDirection::South: return ExchangeId::South;
    case PortDirection::East: return ExchangeId::East;
    case PortDirection::West: return ExchangeId::West;
  }
  return ExchangeId::Core;
}

PortDirection direction_for(ExchangeId e) {
  switch (e) {
    case ExchangeId::Core: return PortDirection::Local;
    case ExchangeId::North: return PortDirection::North;
    case ExchangeId::South: return PortDirection::South;
    case ExchangeId::East: return PortDirection::East;
    case ExchangeId::West: return PortDirection::West;
  }
  return PortDirection::Local;
}

const char* to_string(ExchangeId e) {
  switch (e) {
    case ExchangeId::Core: return "core";
    case ExchangeId::North: return "north";
    case ExchangeId::South: return "south";
    case ExchangeId::East: return "east";
    case ExchangeId::West: return "west";
  }
  return "?";
}

const RingRoute& ring_route(ExchangeId entry, ExchangeId exit) {
  const RingRoute& r = kRoutes[static_cast<int>(entry)][static_cast<int>(exit)];
  RINGSIM_CHECK(r.len > 0, "ring_route: entry may equal exit only for Core");
  return r;
}

ExchangePort next_port(ExchangeId current, ExchangeId exit) {
  if (current == exit) return ExchangePort::E;
  const RingRoute& r = ring_route(current, exit);
  return r.stops[1] == cw_successor(current) ? ExchangePort::B : ExchangePort::A;
}

bool core_disjoint_check(std::span<const ExchangeId> route) {
  for (size_t i = 1; i + 1 < route.size(); ++i) {
    if (route[i] == ExchangeId::Core) return false;
  }
  return true;
}

}  // namespace ringsim
