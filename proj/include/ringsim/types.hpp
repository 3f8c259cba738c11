#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringsim {

using Cycle = uint32_t;
using NodeId = uint16_t;
using PacketId = uint32_t;

enum class RouterDesign : uint8_t { Base1 = 0, Base2 = 1, Ring = 2 };

enum class PortDirection : uint8_t { North = 0, South = 1, East = 2, West = 3, Local = 4 };

inline constexpr int kPortCount = 5;

enum class TrafficPattern : uint8_t {
  Uniform = 0,
  Bitcomp = 1,
  Shuffle = 2,
  Transpose = 3,
  Hotspot = 4,
  Asymmetric = 5,
};

// Invalid configuration, rejected before cycle 0.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency violation (buffer overflow, credit underflow, stalled
// network, duplicate delivery). Never a silent drop.
struct SimFault : std::runtime_error {
  explicit SimFault(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
[[noreturn]] inline void fail_check(const char* msg, const char* file, int line) {
  throw SimFault(std::string(msg) + " (" + file + ":" + std::to_string(line) + ")");
}
}  // namespace detail

#define RINGSIM_CHECK(cond, msg) \
  do {                           \
    if (!(cond)) ::ringsim::detail::fail_check(msg, __FILE__, __LINE__); \
  } while (0)

// Atomic unit of transfer. Single-flit packets (the synthetic default) have
// head == tail == true.
struct Flit {
  PacketId packet = 0;
  Cycle gen_cycle = 0;
  Cycle ready_at = 0;   // first cycle this flit may be read out of its buffer
  Cycle last_move = 0;  // progress-monitor stamp
  NodeId src = 0;
  NodeId dest = 0;
  uint16_t seq = 0;     // flit index within the packet
  PortDirection route_port = PortDirection::Local;  // exit port at the current router
  bool head = false;
  bool tail = false;
};

const char* to_string(RouterDesign d);
const char* to_string(PortDirection p);
const char* to_string(TrafficPattern p);
bool parse_design(const std::string& s, RouterDesign& out);
bool parse_pattern(const std::string& s, TrafficPattern& out);

}  // namespace ringsim
