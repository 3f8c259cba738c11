#pragma once

#include <array>
#include <span>

#include "ringsim/topology.hpp"
#include "ringsim/types.hpp"

namespace ringsim {

// The five ring nodes inside a router. Each maps 1:1 to the external port of
// the same name (Core <-> Local).
enum class ExchangeId : uint8_t { Core = 0, North = 1, South = 2, East = 3, West = 4 };

inline constexpr int kExchangeCount = 5;

// Exchange ports: A faces the counter-clockwise ring neighbor, B the
// clockwise one, E the external link or core.
enum class ExchangePort : uint8_t { A = 0, B = 1, E = 2 };

// Clockwise cycle is fixed as Core -> North -> South -> East -> West -> Core.
ExchangeId cw_successor(ExchangeId e);
ExchangeId cw_predecessor(ExchangeId e);

ExchangeId exchange_for(PortDirection p);
PortDirection direction_for(ExchangeId e);

const char* to_string(ExchangeId e);

// Ordered exchange list from entry to exit within one router. hop_count is
// the list length: one cycle per element for an uncontended flit (the last
// element's readout leaves via port E).
struct RingRoute {
  std::array<ExchangeId, 6> stops{};
  uint8_t len = 0;

  std::span<const ExchangeId> view() const { return {stops.data(), len}; }
  int hop_count() const { return len; }
};

// Frozen routing table: the shortest directed path on the two rings with
// core transit forbidden. Matches the hardware routing table row for row;
// entry == exit is legal only for Core (the 6-hop loopback).
const RingRoute& ring_route(ExchangeId entry, ExchangeId exit);

// Exit exchange for a packet at the given router: the DOR output direction,
// with Local mapping to Core.
inline ExchangeId exit_exchange_for(NodeCoord router, NodeCoord dest) {
  return exchange_for(dor_output(router, dest));
}

// Port a flit at `current` takes toward `exit`: E when already at the exit
// exchange, otherwise the ring port toward the next exchange on the route.
ExchangePort next_port(ExchangeId current, ExchangeId exit);

// True iff the route never transits Core (ring-port in, ring-port out). Core
// may only appear as the first element (injection) or the last (ejection).
bool core_disjoint_check(std::span<const ExchangeId> route);

}  // namespace ringsim
