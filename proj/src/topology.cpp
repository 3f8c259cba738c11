#include "ringsim/topology.hpp"

namespace ringsim {

PortDirection opposite(PortDirection p) {
  switch (p) {
    case PortDirection::North: return PortDirection::South;
    case PortDirection::South: return PortDirection::North;
    case PortDirection::East: return PortDirection::West;
    case PortDirection::West: return PortDirection::East;
    case PortDirection::Local: return PortDirection::Local;
  }
  return PortDirection::Local;
}

PortDirection dor_output(NodeCoord current, NodeCoord dest) {
  if (dest.x != current.x)
    return dest.x > current.x ? PortDirection::East : PortDirection::West;
  if (dest.y != current.y)
    return dest.y > current.y ? PortDirection::North : PortDirection::South;
  return PortDirection::Local;
}

bool has_neighbor(NodeCoord c, PortDirection p, int k) {
  switch (p) {
    case PortDirection::North: return c.y + 1 < k;
    case PortDirection::South: return c.y > 0;
    case PortDirection::East: return c.x + 1 < k;
    case PortDirection::West: return c.x > 0;
    case PortDirection::Local: return false;
  }
  return false;
}

NodeCoord neighbor(NodeCoord c, PortDirection p) {
  switch (p) {
    case PortDirection::North: return {c.x, c.y + 1};
    case PortDirection::South: return {c.x, c.y - 1};
    case PortDirection::East: return {c.x + 1, c.y};
    case PortDirection::West: return {c.x - 1, c.y};
    case PortDirection::Local: return c;
  }
  return c;
}

}  // namespace ringsim
