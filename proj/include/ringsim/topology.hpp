#pragma once

#include "ringsim/types.hpp"

namespace ringsim {

// Mesh coordinates. x grows East, y grows North, node_id = y*k + x.
struct NodeCoord {
  int x = 0;
  int y = 0;
  friend bool operator==(const NodeCoord&, const NodeCoord&) = default;
};

inline NodeCoord coord_of(NodeId id, int k) { return {id % k, id / k}; }
inline NodeId id_of(NodeCoord c, int k) { return static_cast<NodeId>(c.y * k + c.x); }

PortDirection opposite(PortDirection p);

// Dimension-order routing: resolve x fully, then y, then Local.
PortDirection dor_output(NodeCoord current, NodeCoord dest);

// Route decision for the router one link ahead; identical to dor_output
// evaluated at that router.
inline PortDirection lookahead_next_output(NodeCoord next_router, NodeCoord dest) {
  return dor_output(next_router, dest);
}

bool has_neighbor(NodeCoord c, PortDirection p, int k);
NodeCoord neighbor(NodeCoord c, PortDirection p);

}  // namespace ringsim
