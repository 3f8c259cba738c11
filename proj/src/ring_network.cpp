#include "ringsim/ring_network.hpp"

#include <cstring>

namespace ringsim {

namespace {

// Writer slot of entry port q at the buffer on exit port p. Writers are the
// two entry ports other than p, in A/B/E order.
int writer_slot(ExchangePort p, ExchangePort q) {
  int pi = static_cast<int>(p), qi = static_cast<int>(q);
  RINGSIM_CHECK(pi != qi, "no loopback within an exchange");
  return qi < pi ? qi : qi - 1;
}

}  // namespace

RingNetwork::RingNetwork(const SimConfig& config)
    : k_(config.k),
      vcs_(config.effective_vcs()),
      vc_depth_(config.vc_depth_flits),
      link_latency_(config.link_latency_cycles) {
  routers_.resize(static_cast<size_t>(k_ * k_));
  for (auto& r : routers_) {
    for (auto& ex : r.ex) {
      for (auto& b : ex.buf) {
        b.vcs.assign(static_cast<size_t>(vcs_), VcFifo(vc_depth_));
        b.oarb_last = static_cast<uint8_t>(vcs_ - 1);
        b.barb_last = 1;
      }
    }
  }
  inbox_.resize(routers_.size() * 15 * 2);
  inbox_valid_.assign(inbox_.size(), 0);
}

int RingNetwork::pick_target_vc(const ExitBuffer& b, const Flit& f) const {
  if (f.head) {
    for (int v = 0; v < vcs_; ++v) {
      if (b.vcs[v].idle()) return v;
    }
    return -1;
  }
  for (int v = 0; v < vcs_; ++v) {
    if (b.vcs[v].owner() == static_cast<int64_t>(f.packet) && b.vcs[v].free_slots() > 0)
      return v;
  }
  return -1;
}

void RingNetwork::put_proposal(uint32_t target_buf, ExchangePort entry_port,
                               const Proposal& prop) {
  int slot = writer_slot(static_cast<ExchangePort>(target_buf % 3), entry_port);
  uint32_t idx = target_buf * 2 + static_cast<uint32_t>(slot);
  RINGSIM_CHECK(!inbox_valid_[idx], "two writers behind one entry port");
  inbox_[idx] = prop;
  inbox_valid_[idx] = 1;
}

void RingNetwork::propose_buffer(int r, ExchangeId e, ExchangePort p, Cycle t) {
  ExitBuffer& b = routers_[r].ex[static_cast<int>(e)].buf[static_cast<int>(p)];
  for (int i = 1; i <= vcs_; ++i) {
    int v = (b.oarb_last + i) % vcs_;
    const VcFifo& fifo = b.vcs[v];
    if (fifo.empty() || fifo.front().ready_at > t) continue;
    const Flit& f = fifo.front();

    if (p == ExchangePort::E) {
      if (e == ExchangeId::Core) {
        // Ejection into the core sink: always granted, one flit per cycle.
        ejects_.push_back({static_cast<uint16_t>(r), static_cast<uint8_t>(v)});
        return;
      }
      PortDirection dir = direction_for(e);
      NodeCoord here = coord_of(static_cast<NodeId>(r), k_);
      RINGSIM_CHECK(has_neighbor(here, dir, k_), "route leaves the mesh");
      NodeId nr = id_of(neighbor(here, dir), k_);
      ExchangeId entry2 = exchange_for(opposite(dir));
      PortDirection next_route = lookahead_next_output(coord_of(nr, k_), coord_of(f.dest, k_));
      ExchangePort tport = next_port(entry2, exchange_for(next_route));
      uint32_t tb = buf_index(nr, entry2, tport);
      int tvc = pick_target_vc(buf_at(tb), f);
      if (tvc < 0) continue;
      Proposal prop;
      prop.kind = Proposal::FromBuffer;
      prop.src_router = static_cast<uint16_t>(r);
      prop.src_ex = static_cast<uint8_t>(e);
      prop.src_port = static_cast<uint8_t>(p);
      prop.src_vc = static_cast<uint8_t>(v);
      prop.target_vc = static_cast<uint8_t>(tvc);
      prop.crosses_link = true;
      prop.is_head = f.head;
      prop.pkt = f.packet;
      prop.new_route = next_route;
      put_proposal(tb, ExchangePort::E, prop);
      return;
    }

    // Ring hop toward the neighbor exchange; the write lands in the buffer
    // of the port the flit will leave that exchange by. In-transit flits
    // keep their ring direction (buffer B rides clockwise, A counter-
    // clockwise) until they reach the exit exchange; the entry exchange
    // fixed the direction from the routing table.
    ExchangeId y = (p == ExchangePort::B) ? cw_successor(e) : cw_predecessor(e);
    ExchangePort arrive_port = (p == ExchangePort::B) ? ExchangePort::A : ExchangePort::B;
    ExchangePort tport = (y == exchange_for(f.route_port)) ? ExchangePort::E : p;
    uint32_t tb = buf_index(r, y, tport);
    int tvc = pick_target_vc(buf_at(tb), f);
    if (tvc < 0) continue;
    Proposal prop;
    prop.kind = Proposal::FromBuffer;
    prop.src_router = static_cast<uint16_t>(r);
    prop.src_ex = static_cast<uint8_t>(e);
    prop.src_port = static_cast<uint8_t>(p);
    prop.src_vc = static_cast<uint8_t>(v);
    prop.target_vc = static_cast<uint8_t>(tvc);
    prop.is_head = f.head;
    prop.pkt = f.packet;
    put_proposal(tb, arrive_port, prop);
    return;
  }
}

void RingNetwork::propose_injection(int node, const SourceQueue& q, Cycle t) {
  if (q.flits.empty()) return;
  const Flit& f = q.flits.front();
  if (f.gen_cycle > t) return;
  ExchangeId exit = exchange_for(f.route_port);
  // Self-addressed packets ride the full clockwise loop; everything else
  // takes the table route out of Core.
  ExchangePort tport = (exit == ExchangeId::Core)
                           ? ExchangePort::B
                           : next_port(ExchangeId::Core, exit);
  uint32_t tb = buf_index(node, ExchangeId::Core, tport);
  int tvc = pick_target_vc(buf_at(tb), f);
  if (tvc < 0) return;
  Proposal prop;
  prop.kind = Proposal::FromQueue;
  prop.src_node = static_cast<uint16_t>(node);
  prop.target_vc = static_cast<uint8_t>(tvc);
  prop.is_head = f.head;
  prop.pkt = f.packet;
  put_proposal(tb, ExchangePort::E, prop);
}

void RingNetwork::tick(Cycle t, std::vector<SourceQueue>& sources,
                       std::vector<Flit>& delivered) {
  std::memset(inbox_valid_.data(), 0, inbox_valid_.size());
  grants_.clear();
  ejects_.clear();

  // Sub-phase 1: all proposals and arbitration against end-of-previous-cycle
  // state. Nothing is mutated until every decision is made.
  const int n = static_cast<int>(routers_.size());
  for (int r = 0; r < n; ++r) {
    for (int e = 0; e < 5; ++e) {
      for (int p = 0; p < 3; ++p) {
        propose_buffer(r, static_cast<ExchangeId>(e), static_cast<ExchangePort>(p), t);
      }
    }
  }
  for (int node = 0; node < n; ++node) propose_injection(node, sources[node], t);

  if (frozen_) {
    ejects_.clear();
  } else {
    for (uint32_t b = 0; b < static_cast<uint32_t>(n) * 15; ++b) {
      bool r0 = inbox_valid_[b * 2] != 0;
      bool r1 = inbox_valid_[b * 2 + 1] != 0;
      if (!r0 && !r1) continue;
      uint8_t slot;
      if (r0 && r1) {
        slot = buf_at(b).barb_last == 0 ? 1 : 0;
      } else {
        slot = r0 ? 0 : 1;
      }
      grants_.push_back({b, slot});
    }
  }

  // Sub-phase 2: commit. Moved flits become readable next cycle.
  for (const Eject& ej : ejects_) {
    ExitBuffer& b = routers_[ej.router].ex[0].buf[static_cast<int>(ExchangePort::E)];
    Flit f = b.vcs[ej.vc].pop();
    b.oarb_last = ej.vc;
    f.last_move = t;
    --occupancy_;
    ++moves_;
    if (events_on()) emit({t, EvKind::Eject, f.packet, f.seq, ej.router, 0, 0, 0});
    delivered.push_back(f);
  }

  for (const Grant& g : grants_) {
    uint32_t slot_idx = g.buf * 2 + g.slot;
    const Proposal& prop = inbox_[slot_idx];
    Flit f;
    if (prop.kind == Proposal::FromBuffer) {
      ExitBuffer& sb = routers_[prop.src_router].ex[prop.src_ex].buf[prop.src_port];
      f = sb.vcs[prop.src_vc].pop();
      sb.oarb_last = prop.src_vc;
    } else {
      f = sources[prop.src_node].flits.front();
      sources[prop.src_node].flits.pop_front();
      ++occupancy_;
    }
    f.last_move = t;
    ExitBuffer& tb = buf_at(g.buf);
    tb.barb_last = g.slot;
    tb.vcs[prop.target_vc].reserve_slot(prop.pkt, prop.is_head);
    ++moves_;
    if (prop.crosses_link) {
      f.route_port = prop.new_route;
      if (events_on())
        emit({t, EvKind::Launch, f.packet, f.seq, static_cast<NodeId>(prop.src_router),
              static_cast<uint8_t>(prop.src_ex), 0, 0});
    }
    int delay = prop.crosses_link ? link_latency_ - 1 : 0;
    if (delay == 0) {
      f.ready_at = t + 1;
      tb.vcs[prop.target_vc].push_reserved(f);
      if (events_on())
        emit({t, EvKind::BufferWrite, f.packet, f.seq,
              static_cast<NodeId>(g.buf / 15), static_cast<uint8_t>((g.buf / 3) % 5),
              static_cast<uint8_t>(g.buf % 3), g.slot});
    } else {
      wire_.push_back({f, t + static_cast<Cycle>(delay), g.buf, prop.target_vc});
    }
  }

  while (!wire_.empty() && wire_.front().arrive <= t) {
    WireFlit wf = wire_.front();
    wire_.pop_front();
    wf.flit.ready_at = t + 1;
    wf.flit.last_move = t;
    buf_at(wf.target_buf).vcs[wf.target_vc].push_reserved(wf.flit);
    ++moves_;
    if (events_on())
      emit({t, EvKind::BufferWrite, wf.flit.packet, wf.flit.seq,
            static_cast<NodeId>(wf.target_buf / 15), static_cast<uint8_t>((wf.target_buf / 3) % 5),
            static_cast<uint8_t>(wf.target_buf % 3), 2});
  }
}

void RingNetwork::debug_place_flit(NodeId r, ExchangeId e, ExchangePort p, int vc,
                                   const Flit& f) {
  ExitBuffer& b = routers_[r].ex[static_cast<int>(e)].buf[static_cast<int>(p)];
  b.vcs[vc].reserve_slot(f.packet, f.head);
  b.vcs[vc].push_reserved(f);
  ++occupancy_;
}

void RingNetwork::for_each_flit(const std::function<void(const Flit&)>& fn) const {
  for (const Router& r : routers_) {
    for (const Exchange& ex : r.ex) {
      for (const ExitBuffer& b : ex.buf) {
        for (const VcFifo& vc : b.vcs) vc.for_each(fn);
      }
    }
  }
  for (const WireFlit& wf : wire_) fn(wf.flit);
}

void RingNetwork::check_invariants() const {
  int64_t count = 0;
  for (const Router& r : routers_) {
    for (const Exchange& ex : r.ex) {
      for (const ExitBuffer& b : ex.buf) {
        for (const VcFifo& vc : b.vcs) {
          RINGSIM_CHECK(vc.size() + vc.promised() <= vc.capacity(), "VC above capacity");
          RINGSIM_CHECK(vc.owner() >= 0 || (vc.size() == 0 && vc.promised() == 0),
                        "unowned VC holds flits");
          count += vc.size();
        }
      }
    }
  }
  count += static_cast<int64_t>(wire_.size());
  RINGSIM_CHECK(count == occupancy_, "occupancy counter out of sync");
}

}  // namespace ringsim
