#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "ringsim/config.hpp"
#include "ringsim/types.hpp"

namespace ringsim {

// Unbounded per-node FIFO of generated flits waiting to enter the network.
struct SourceQueue {
  std::deque<Flit> flits;
};

enum class EvKind : uint8_t {
  Generated = 0,
  BufferWrite = 1,  // flit committed into a router buffer (a = unit, b = sub-buffer, c = writer)
  Launch = 2,       // flit read out onto an external link (a = output port)
  Eject = 3,        // flit delivered at its destination core port
  VaGrant = 4,
  SaGrant = 5,
};

struct SimEvent {
  Cycle cycle = 0;
  EvKind kind = EvKind::Generated;
  PacketId packet = 0;
  uint16_t seq = 0;
  NodeId router = 0;
  uint8_t a = 0, b = 0, c = 0;
};

using EventHook = std::function<void(const SimEvent&)>;

// One network design behind the two-phase deterministic tick. Within a cycle
// every arbiter decides from state visible at the end of the previous cycle;
// committed flits become readable the following cycle.
class Network {
 public:
  virtual ~Network() = default;

  // Advances one cycle: injects from the source queues where granted, moves
  // flits, appends ejected flits to `delivered`.
  virtual void tick(Cycle t, std::vector<SourceQueue>& sources,
                    std::vector<Flit>& delivered) = 0;

  virtual int64_t flits_in_network() const = 0;

  // Total committed flit movements since construction; the progress monitor
  // treats an unchanged count on a non-empty network as a potential stall.
  virtual int64_t total_moves() const = 0;

  virtual void for_each_flit(const std::function<void(const Flit&)>& fn) const = 0;

  // Verifies internal accounting (credit conservation, cached counters).
  virtual void check_invariants() const = 0;

  // Test hook: a frozen network grants nothing, so the progress monitor must
  // eventually flag a stall.
  void freeze_arbiters(bool frozen) { frozen_ = frozen; }

  void set_event_hook(EventHook hook) { hook_ = std::move(hook); }

 protected:
  void emit(const SimEvent& ev) const {
    if (hook_) hook_(ev);
  }
  bool events_on() const { return static_cast<bool>(hook_); }

  bool frozen_ = false;
  EventHook hook_;
};

std::unique_ptr<Network> make_network(const SimConfig& config);

}  // namespace ringsim
