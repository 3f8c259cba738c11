#pragma once

#include <cstdint>
#include <vector>

#include "ringsim/types.hpp"

namespace ringsim {

// Fixed-depth flit FIFO with wormhole ownership. A VC holds flits of at most
// one packet at a time: `owner` is claimed when a head flit is granted a
// write and released when the tail flit is read out. `promised` counts slots
// reserved by grants whose commit is still in flight (nonzero only while a
// flit rides a multi-cycle wire).
class VcFifo {
 public:
  VcFifo() = default;
  explicit VcFifo(int capacity) : slots_(static_cast<size_t>(capacity)) {}

  int capacity() const { return static_cast<int>(slots_.size()); }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  int free_slots() const { return capacity() - size_ - promised_; }

  // Free for a new packet's head: no current owner and nothing pending.
  bool idle() const { return owner_ < 0 && size_ == 0 && promised_ == 0; }

  int64_t owner() const { return owner_; }
  int promised() const { return promised_; }

  void reserve_slot(PacketId pkt, bool is_head) {
    RINGSIM_CHECK(free_slots() > 0, "VC overflow: reservation without a free slot");
    if (is_head) {
      RINGSIM_CHECK(owner_ < 0, "VC ownership conflict");
      owner_ = pkt;
    } else {
      RINGSIM_CHECK(owner_ == static_cast<int64_t>(pkt), "body flit entering foreign VC");
    }
    ++promised_;
  }

  void push_reserved(const Flit& f) {
    RINGSIM_CHECK(promised_ > 0, "VC push without reservation");
    --promised_;
    slots_[static_cast<size_t>((head_ + size_) % capacity())] = f;
    ++size_;
  }

  const Flit& front() const { return slots_[static_cast<size_t>(head_)]; }
  Flit& front() { return slots_[static_cast<size_t>(head_)]; }

  // nth flit from the front (0 = front); used by the conventional router to
  // look past flits already scheduled for switch traversal.
  const Flit& at(int n) const {
    return slots_[static_cast<size_t>((head_ + n) % capacity())];
  }

  Flit pop() {
    RINGSIM_CHECK(size_ > 0, "VC underflow");
    Flit f = slots_[static_cast<size_t>(head_)];
    head_ = (head_ + 1) % capacity();
    --size_;
    if (f.tail) owner_ = -1;
    return f;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int i = 0; i < size_; ++i) fn(at(i));
  }

 private:
  std::vector<Flit> slots_;
  int head_ = 0;
  int size_ = 0;
  int promised_ = 0;
  int64_t owner_ = -1;
};

}  // namespace ringsim
