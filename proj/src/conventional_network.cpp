#include "ringsim/conventional_network.hpp"

namespace ringsim {

namespace {
constexpr int kLocal = static_cast<int>(PortDirection::Local);
constexpr int kSinkCredits = 1 << 30;
}  // namespace

ConventionalNetwork::ConventionalNetwork(const SimConfig& config)
    : k_(config.k),
      vcs_(config.effective_vcs()),
      vc_depth_(config.vc_depth_flits),
      link_latency_(config.link_latency_cycles),
      speculative_(config.design == RouterDesign::Base2) {
  routers_.resize(static_cast<size_t>(k_ * k_));
  for (auto& r : routers_) {
    for (int p = 0; p < 5; ++p) {
      r.in[p].resize(static_cast<size_t>(vcs_));
      for (auto& iv : r.in[p]) iv.fifo = VcFifo(vc_depth_);
      r.out[p].resize(static_cast<size_t>(vcs_));
      for (auto& ov : r.out[p]) ov.credits = (p == kLocal) ? kSinkCredits : vc_depth_;
      r.va_in_last[p] = r.sa_in_last[p] = static_cast<uint8_t>(vcs_ - 1);
      r.va_out_last[p] = r.sa_out_last[p] = 4;
    }
  }
  wires_.resize(routers_.size() * 4);
}

void ConventionalNetwork::decide(int r, const SourceQueue& q, Cycle t) {
  Router& R = routers_[static_cast<size_t>(r)];
  R.rc.clear();
  R.va.clear();
  R.sa.clear();
  R.inject = {};
  if (frozen_) return;

  NodeCoord here = coord_of(static_cast<NodeId>(r), k_);

  if (!speculative_) {
    for (int p = 0; p < 5; ++p) {
      for (int v = 0; v < vcs_; ++v) {
        InputVc& iv = R.in[p][v];
        if (iv.state != VcState::Idle || iv.fifo.empty()) continue;
        const Flit& h = iv.fifo.front();
        if (h.ready_at > t) continue;
        RINGSIM_CHECK(h.head, "non-head flit at the front of an idle VC");
        PortDirection out = dor_output(here, coord_of(h.dest, k_));
        R.rc.push_back({static_cast<uint8_t>(p), static_cast<uint8_t>(v),
                        static_cast<uint8_t>(out)});
      }
    }
  }

  // VA, separable input-first. Stage 1: one requesting VC per input unit.
  int cand_vc[5], cand_out[5];
  for (int p = 0; p < 5; ++p) {
    cand_vc[p] = -1;
    cand_out[p] = -1;
    for (int i = 1; i <= vcs_; ++i) {
      int v = (R.va_in_last[p] + i) % vcs_;
      const InputVc& iv = R.in[p][v];
      if (speculative_) {
        if (iv.state != VcState::Idle || iv.fifo.empty()) continue;
        const Flit& h = iv.fifo.front();
        if (h.ready_at > t) continue;
        cand_vc[p] = v;
        cand_out[p] = static_cast<int>(h.route_port);  // lookahead route
        break;
      }
      if (iv.state != VcState::RouteComputed) continue;
      cand_vc[p] = v;
      cand_out[p] = iv.out_port;
      break;
    }
  }
  // Stage 2: one grant per output port, lowest-index free output VC.
  bool va_won[5] = {false, false, false, false, false};
  int va_ovc[5] = {0, 0, 0, 0, 0};
  for (int o = 0; o < 5; ++o) {
    int winner = -1;
    for (int i = 1; i <= 5; ++i) {
      int p = (R.va_out_last[o] + i) % 5;
      if (cand_vc[p] >= 0 && cand_out[p] == o) {
        winner = p;
        break;
      }
    }
    if (winner < 0) continue;
    int ovc = -1;
    for (int v = 0; v < vcs_; ++v) {
      if (R.out[o][v].owner < 0) {
        ovc = v;
        break;
      }
    }
    if (ovc < 0) continue;
    R.va.push_back({static_cast<uint8_t>(winner), static_cast<uint8_t>(cand_vc[winner]),
                    static_cast<uint8_t>(o), static_cast<uint8_t>(ovc)});
    va_won[winner] = true;
    va_ovc[winner] = ovc;
  }

  // SA, separable input-first. Non-speculative requests come from VCs that
  // already hold an output VC; base-2 heads may request speculatively
  // alongside their VA request.
  int sa_vc[5], sa_out[5], sa_ovc[5];
  bool sa_spec[5];
  for (int p = 0; p < 5; ++p) {
    sa_vc[p] = -1;
    for (int i = 1; i <= vcs_; ++i) {
      int v = (R.sa_in_last[p] + i) % vcs_;
      const InputVc& iv = R.in[p][v];
      if (iv.state != VcState::VcAllocated && iv.state != VcState::Active) continue;
      if (iv.fifo.size() <= iv.pending) continue;
      if (iv.fifo.at(iv.pending).ready_at > t) continue;
      if (iv.out_port != kLocal && R.out[iv.out_port][iv.out_vc].credits < 1) continue;
      sa_vc[p] = v;
      sa_out[p] = iv.out_port;
      sa_ovc[p] = iv.out_vc;
      sa_spec[p] = false;
      break;
    }
    if (speculative_ && sa_vc[p] < 0 && cand_vc[p] >= 0) {
      sa_vc[p] = cand_vc[p];
      sa_out[p] = cand_out[p];
      sa_ovc[p] = -1;  // known only if VA succeeds
      sa_spec[p] = true;
    }
  }
  for (int o = 0; o < 5; ++o) {
    int winner = -1;
    bool winner_spec = false;
    for (int i = 1; i <= 5; ++i) {  // non-speculative class first
      int p = (R.sa_out_last[o] + i) % 5;
      if (sa_vc[p] >= 0 && sa_out[p] == o && !sa_spec[p]) {
        winner = p;
        break;
      }
    }
    if (winner < 0) {
      for (int i = 1; i <= 5; ++i) {
        int p = (R.sa_out_last[o] + i) % 5;
        if (sa_vc[p] >= 0 && sa_out[p] == o && sa_spec[p]) {
          winner = p;
          winner_spec = true;
          break;
        }
      }
    }
    if (winner < 0) continue;
    if (winner_spec) {
      // Voided unless the VA grant landed this same cycle; a voided grant
      // leaves the output idle.
      if (!va_won[winner]) continue;
      int ovc = va_ovc[winner];
      if (o != kLocal && R.out[o][ovc].credits < 1) continue;
      R.sa.push_back({static_cast<uint8_t>(winner), static_cast<uint8_t>(sa_vc[winner]),
                      static_cast<uint8_t>(o), static_cast<uint8_t>(ovc)});
    } else {
      R.sa.push_back({static_cast<uint8_t>(winner), static_cast<uint8_t>(sa_vc[winner]),
                      static_cast<uint8_t>(o), static_cast<uint8_t>(sa_ovc[winner])});
    }
  }

  // Injection from the source queue into a Local input VC.
  if (!q.flits.empty() && q.flits.front().gen_cycle <= t) {
    const Flit& f = q.flits.front();
    int pick = -1;
    if (f.head) {
      for (int v = 0; v < vcs_; ++v) {
        const InputVc& iv = R.in[kLocal][v];
        if (iv.state == VcState::Idle && iv.fifo.idle()) {
          pick = v;
          break;
        }
      }
    } else {
      for (int v = 0; v < vcs_; ++v) {
        const InputVc& iv = R.in[kLocal][v];
        if (iv.fifo.owner() == static_cast<int64_t>(f.packet) && iv.fifo.free_slots() > 0) {
          pick = v;
          break;
        }
      }
    }
    if (pick >= 0) R.inject = {true, static_cast<uint8_t>(pick)};
  }
}

void ConventionalNetwork::commit(int r, std::vector<SourceQueue>& sources,
                                 std::vector<Flit>& delivered, Cycle t) {
  Router& R = routers_[static_cast<size_t>(r)];
  NodeCoord here = coord_of(static_cast<NodeId>(r), k_);

  // Switch traversal of flits granted last cycle.
  for (const PendSt& s : R.pend_now) {
    InputVc& iv = R.in[s.in_port][s.in_vc];
    Flit f = iv.fifo.pop();
    --iv.pending;
    f.last_move = t;
    ++moves_;
    if (s.out_port == kLocal) {
      if (f.tail) R.out[kLocal][s.out_vc].owner = -1;
      --occupancy_;
      if (events_on())
        emit({t, EvKind::Eject, f.packet, f.seq, static_cast<NodeId>(r), 0, 0, 0});
      delivered.push_back(f);
    } else {
      PortDirection d = static_cast<PortDirection>(s.out_port);
      NodeCoord next = neighbor(here, d);
      f.route_port = lookahead_next_output(next, coord_of(f.dest, k_));
      if (events_on())
        emit({t, EvKind::Launch, f.packet, f.seq, static_cast<NodeId>(r), s.out_port, 0, 0});
      wire(r, d).flits.push_back({f, t + static_cast<Cycle>(link_latency_), s.out_vc});
    }
    if (s.in_port != kLocal) {
      PortDirection pd = static_cast<PortDirection>(s.in_port);
      int upstream = id_of(neighbor(here, pd), k_);
      wire(upstream, opposite(pd))
          .credits.push_back({t + static_cast<Cycle>(link_latency_), s.in_vc, f.tail});
    }
    if (f.tail) {
      RINGSIM_CHECK(iv.fifo.empty(), "tail left a non-empty VC");
      iv.state = VcState::Idle;
    }
  }
  R.pend_now.clear();

  for (const RcRec& rc : R.rc) {
    InputVc& iv = R.in[rc.in_port][rc.in_vc];
    iv.state = VcState::RouteComputed;
    iv.out_port = rc.out_port;
  }
  for (const VaGrantRec& g : R.va) {
    InputVc& iv = R.in[g.in_port][g.in_vc];
    iv.state = VcState::VcAllocated;
    iv.out_vc = g.out_vc;
    iv.out_port = g.out_port;
    R.out[g.out_port][g.out_vc].owner = static_cast<int64_t>(iv.fifo.front().packet);
    R.va_in_last[g.in_port] = g.in_vc;
    R.va_out_last[g.out_port] = g.in_port;
    if (events_on())
      emit({t, EvKind::VaGrant, iv.fifo.front().packet, iv.fifo.front().seq,
            static_cast<NodeId>(r), g.in_port, g.in_vc, g.out_port});
  }
  for (const PendSt& s : R.sa) {
    InputVc& iv = R.in[s.in_port][s.in_vc];
    iv.state = VcState::Active;
    ++iv.pending;
    if (s.out_port != kLocal) --R.out[s.out_port][s.out_vc].credits;
    R.pend_next.push_back(s);
    R.sa_in_last[s.in_port] = s.in_vc;
    R.sa_out_last[s.out_port] = s.in_port;
    if (events_on())
      emit({t, EvKind::SaGrant, iv.fifo.at(iv.pending - 1).packet,
            iv.fifo.at(iv.pending - 1).seq, static_cast<NodeId>(r), s.in_port, s.in_vc,
            s.out_port});
  }
  if (R.inject.valid) {
    Flit f = sources[static_cast<size_t>(r)].flits.front();
    sources[static_cast<size_t>(r)].flits.pop_front();
    f.ready_at = t + 1;
    f.last_move = t;
    InputVc& iv = R.in[kLocal][R.inject.vc];
    iv.fifo.reserve_slot(f.packet, f.head);
    iv.fifo.push_reserved(f);
    ++occupancy_;
    ++moves_;
    if (events_on())
      emit({t, EvKind::BufferWrite, f.packet, f.seq, static_cast<NodeId>(r),
            static_cast<uint8_t>(kLocal), R.inject.vc, 0});
  }
  R.pend_now.swap(R.pend_next);
}

void ConventionalNetwork::tick(Cycle t, std::vector<SourceQueue>& sources,
                               std::vector<Flit>& delivered) {
  const int n = static_cast<int>(routers_.size());
  for (int r = 0; r < n; ++r) decide(r, sources[static_cast<size_t>(r)], t);
  for (int r = 0; r < n; ++r) commit(r, sources, delivered, t);

  // Link pipelines: arrivals commit at the end of the cycle and become
  // readable next cycle; credits are applied on arrival.
  for (int r = 0; r < n; ++r) {
    NodeCoord here = coord_of(static_cast<NodeId>(r), k_);
    for (int d = 0; d < 4; ++d) {
      Wire& w = wire(r, static_cast<PortDirection>(d));
      if (!w.flits.empty()) {
        PortDirection pd = static_cast<PortDirection>(d);
        int dest = id_of(neighbor(here, pd), k_);
        int in_port = static_cast<int>(opposite(pd));
        while (!w.flits.empty() && w.flits.front().arrive <= t) {
          WireFlit wf = w.flits.front();
          w.flits.pop_front();
          wf.flit.ready_at = t + 1;
          wf.flit.last_move = t;
          InputVc& iv = routers_[static_cast<size_t>(dest)].in[in_port][wf.vc];
          iv.fifo.reserve_slot(wf.flit.packet, wf.flit.head);
          iv.fifo.push_reserved(wf.flit);
          ++moves_;
          if (events_on())
            emit({t, EvKind::BufferWrite, wf.flit.packet, wf.flit.seq,
                  static_cast<NodeId>(dest), static_cast<uint8_t>(in_port), wf.vc, 0});
        }
      }
      while (!w.credits.empty() && w.credits.front().arrive <= t) {
        WireCredit wc = w.credits.front();
        w.credits.pop_front();
        OutputVc& ov = routers_[static_cast<size_t>(r)].out[d][wc.vc];
        ++ov.credits;
        RINGSIM_CHECK(ov.credits <= vc_depth_, "credit overflow");
        if (wc.tail) ov.owner = -1;
      }
    }
  }
}

void ConventionalNetwork::for_each_flit(const std::function<void(const Flit&)>& fn) const {
  for (const Router& r : routers_) {
    for (int p = 0; p < 5; ++p) {
      for (const InputVc& iv : r.in[p]) iv.fifo.for_each(fn);
    }
  }
  for (const Wire& w : wires_) {
    for (const WireFlit& wf : w.flits) fn(wf.flit);
  }
}

void ConventionalNetwork::check_invariants() const {
  int64_t count = 0;
  const int n = static_cast<int>(routers_.size());
  for (int r = 0; r < n; ++r) {
    const Router& R = routers_[static_cast<size_t>(r)];
    NodeCoord here = coord_of(static_cast<NodeId>(r), k_);
    for (int p = 0; p < 5; ++p) {
      for (int v = 0; v < vcs_; ++v) count += R.in[p][v].fifo.size();
      if (p == kLocal || !has_neighbor(here, static_cast<PortDirection>(p), k_)) continue;
      // Credit conservation per upstream output VC feeding this input.
      int upstream = id_of(neighbor(here, static_cast<PortDirection>(p)), k_);
      PortDirection uo = opposite(static_cast<PortDirection>(p));
      const Wire& w = wires_[static_cast<size_t>(upstream * 4 + static_cast<int>(uo))];
      for (int v = 0; v < vcs_; ++v) {
        int in_flight = 0;
        for (const WireFlit& wf : w.flits)
          if (wf.vc == v) ++in_flight;
        int credits = routers_[static_cast<size_t>(upstream)].out[static_cast<int>(uo)][v].credits;
        RINGSIM_CHECK(credits + in_flight + R.in[p][v].fifo.size() == vc_depth_,
                      "link credit conservation violated");
      }
    }
  }
  for (const Wire& w : wires_) count += static_cast<int64_t>(w.flits.size());
  RINGSIM_CHECK(count == occupancy_, "occupancy counter out of sync");
}

}  // namespace ringsim
