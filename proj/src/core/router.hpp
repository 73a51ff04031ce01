#pragma once

#include <utility>
#include <vector>

#include "core/scene.hpp"

namespace figforge::router {

struct RouterConfig {
  Emu pitch = 114300;     // 0.125 in grid pitch
  Emu clearance = 91440;  // 0.1 in obstacle inflation
};

struct RoutedPath {
  std::vector<EmuPoint> waypoints;  // orthogonal polyline, ports included
  int bends = 0;                    // direction changes in the polyline
  Emu length = 0;                   // polyline length in EMU
  bool fallback = false;            // no obstacle-free path existed
  // Cell-level metrics of the chosen grid path; the optimality contract
  // (bends, then length) is stated at this granularity.
  int grid_bends = 0;
  int grid_steps = 0;
};

// Ports chosen by the dominant axis of the center-to-center vector;
// |dx| >= |dy| resolves to the horizontal pair (documented tie-break).
std::pair<Port, Port> anchor_ports(const EmuRect& src_bbox, const EmuRect& dst_bbox);

// Attachment point: midpoint of the given side.
EmuPoint port_point(const EmuRect& bbox, Port p);

// Minimal (bends, then length) orthogonal path over the routing grid,
// avoiding every node bbox inflated by clearance except the endpoints'.
// Unreachable goals return a direct 3-segment elbow with fallback=true.
RoutedPath route_elbow(const SceneGraph& scene, const ConnectorSpec& connector,
                       const RouterConfig& config = {});

// Populates ports on every connector and waypoints on elbows. Pure
// function of the scene: connectors whose environment is unchanged
// produce identical output on re-runs.
void route_all(SceneGraph& scene, const RouterConfig& config = {});

}  // namespace figforge::router
