#pragma once

#include <array>
#include <deque>
#include <vector>

#include "ringsim/network.hpp"
#include "ringsim/topology.hpp"
#include "ringsim/vc_buffer.hpp"

namespace ringsim {

// Mesh of input-queued virtual-channel routers with a 5x5 crossbar.
//
// base-1: the canonical four-stage pipeline RC -> VA -> SA -> ST, four cycles
// per router for an uncontended flit.
// base-2: lookahead routing (the upstream router stamps the output port, so
// RC vanishes) plus speculative switch allocation (VA and SA in the same
// cycle); two cycles per router when speculation succeeds. A speculative SA
// grant whose VA failed is voided and the output idles that cycle.
class ConventionalNetwork : public Network {
 public:
  explicit ConventionalNetwork(const SimConfig& config);

  void tick(Cycle t, std::vector<SourceQueue>& sources,
            std::vector<Flit>& delivered) override;

  int64_t flits_in_network() const override { return occupancy_; }
  int64_t total_moves() const override { return moves_; }
  void for_each_flit(const std::function<void(const Flit&)>& fn) const override;
  void check_invariants() const override;

  enum class VcState : uint8_t { Idle, RouteComputed, VcAllocated, Active };

  struct InputVc {
    VcFifo fifo;
    VcState state = VcState::Idle;
    uint8_t out_port = 0;
    uint8_t out_vc = 0;
    uint8_t pending = 0;  // flits granted the switch but not yet traversed
  };
  struct OutputVc {
    int64_t owner = -1;
    int credits = 0;
  };

  const InputVc& input_vc(NodeId r, PortDirection port, int vc) const {
    return routers_[r].in[static_cast<int>(port)][vc];
  }
  const OutputVc& output_vc(NodeId r, PortDirection port, int vc) const {
    return routers_[r].out[static_cast<int>(port)][vc];
  }

 private:
  struct PendSt {
    uint8_t in_port, in_vc, out_port, out_vc;
  };
  struct VaGrantRec {
    uint8_t in_port, in_vc, out_port, out_vc;
  };
  struct RcRec {
    uint8_t in_port, in_vc, out_port;
  };
  struct InjectRec {
    bool valid = false;
    uint8_t vc = 0;
  };
  struct Router {
    std::array<std::vector<InputVc>, 5> in;
    std::array<std::vector<OutputVc>, 5> out;
    std::array<uint8_t, 5> va_in_last, va_out_last, sa_in_last, sa_out_last;
    // per-cycle scratch
    std::vector<RcRec> rc;
    std::vector<VaGrantRec> va;
    std::vector<PendSt> sa;
    std::vector<PendSt> pend_now, pend_next;
    InjectRec inject;
  };
  struct WireFlit {
    Flit flit;
    Cycle arrive;
    uint8_t vc;
  };
  struct WireCredit {
    Cycle arrive;
    uint8_t vc;
    bool tail;
  };
  struct Wire {
    std::deque<WireFlit> flits;
    std::deque<WireCredit> credits;
  };

  void decide(int r, const SourceQueue& q, Cycle t);
  void commit(int r, std::vector<SourceQueue>& sources, std::vector<Flit>& delivered,
              Cycle t);
  Wire& wire(int router, PortDirection out_dir) {
    return wires_[static_cast<size_t>(router * 4 + static_cast<int>(out_dir))];
  }

  int k_;
  int vcs_;
  int vc_depth_;
  int link_latency_;
  bool speculative_;  // base-2
  std::vector<Router> routers_;
  std::vector<Wire> wires_;  // 4 outbound directions per router
  int64_t occupancy_ = 0;
  int64_t moves_ = 0;
};

}  // namespace ringsim
