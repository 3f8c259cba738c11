#pragma once

#include <array>
#include <deque>
#include <vector>

#include "ringsim/network.hpp"
#include "ringsim/ring_route.hpp"
#include "ringsim/vc_buffer.hpp"

namespace ringsim {

// Mesh of ring routers: five exchanges per router on two directed rings,
// exit-side buffers, 2:1 buffer arbiters and per-port output arbiters, all
// round-robin. One cycle per exchange hop; a port-E readout reaches the
// neighboring router's entry buffer in the same cycle at link latency 1
// (each extra latency cycle rides an explicit wire pipeline).
class RingNetwork : public Network {
 public:
  explicit RingNetwork(const SimConfig& config);

  void tick(Cycle t, std::vector<SourceQueue>& sources,
            std::vector<Flit>& delivered) override;

  int64_t flits_in_network() const override { return occupancy_; }
  int64_t total_moves() const override { return moves_; }
  void for_each_flit(const std::function<void(const Flit&)>& fn) const override;
  void check_invariants() const override;

  // Each exit buffer owns its VCs plus the two arbiter states attached to
  // it: the output arbiter (round-robin over VCs reading out of this buffer)
  // and the buffer arbiter (round-robin over the buffer's two writers).
  struct ExitBuffer {
    std::vector<VcFifo> vcs;
    uint8_t oarb_last = 0;
    uint8_t barb_last = 1;
  };
  struct Exchange {
    std::array<ExitBuffer, 3> buf;  // indexed by ExchangePort
  };
  struct Router {
    std::array<Exchange, 5> ex;  // indexed by ExchangeId
  };

  const ExitBuffer& buffer(NodeId r, ExchangeId e, ExchangePort p) const {
    return routers_[r].ex[static_cast<int>(e)].buf[static_cast<int>(p)];
  }

  // Test support: deposit a flit as if it had just been committed. ready_at
  // is taken from the flit.
  void debug_place_flit(NodeId r, ExchangeId e, ExchangePort p, int vc, const Flit& f);

 private:
  struct Proposal {
    enum Kind : uint8_t { FromBuffer, FromQueue };
    Kind kind = FromBuffer;
    uint16_t src_router = 0;
    uint8_t src_ex = 0, src_port = 0, src_vc = 0;
    uint16_t src_node = 0;
    uint8_t target_vc = 0;
    bool crosses_link = false;
    bool is_head = false;
    PacketId pkt = 0;
    PortDirection new_route = PortDirection::Local;
  };
  struct WireFlit {
    Flit flit;
    Cycle arrive = 0;
    uint32_t target_buf = 0;
    uint8_t target_vc = 0;
  };
  struct Grant {
    uint32_t buf = 0;
    uint8_t slot = 0;
  };
  struct Eject {
    uint16_t router = 0;
    uint8_t vc = 0;
  };

  ExitBuffer& buf_at(uint32_t index) {
    return routers_[index / 15].ex[(index / 3) % 5].buf[index % 3];
  }
  uint32_t buf_index(int r, ExchangeId e, ExchangePort p) const {
    return static_cast<uint32_t>((r * 5 + static_cast<int>(e)) * 3 + static_cast<int>(p));
  }

  void propose_buffer(int r, ExchangeId e, ExchangePort p, Cycle t);
  void propose_injection(int node, const SourceQueue& q, Cycle t);
  // -1 when the buffer has no VC this flit may enter.
  int pick_target_vc(const ExitBuffer& b, const Flit& f) const;
  void put_proposal(uint32_t target_buf, ExchangePort entry_port, const Proposal& prop);

  int k_;
  int vcs_;
  int vc_depth_;
  int link_latency_;
  std::vector<Router> routers_;
  std::vector<Proposal> inbox_;       // 2 writer slots per buffer
  std::vector<uint8_t> inbox_valid_;
  std::vector<Grant> grants_;
  std::vector<Eject> ejects_;
  std::deque<WireFlit> wire_;
  int64_t occupancy_ = 0;
  int64_t moves_ = 0;
};

}  // namespace ringsim
