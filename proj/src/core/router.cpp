#include "core/router.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <tuple>

#include "core/error.hpp"

namespace figforge::router {

namespace {

Emu floor_div(Emu a, Emu b) {
  Emu q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

struct Dir {
  int dx;
  int dy;
};
// 0=+x 1=-x 2=+y 3=-y; index order fixes deterministic tie-breaking.
constexpr Dir kDirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

int dir_for_port_outward(Port p) {
  switch (p) {
    case Port::Right: return 0;
    case Port::Left: return 1;
    case Port::Bottom: return 2;
    case Port::Top: return 3;
  }
  return 0;
}

int opposite(int dir) { return dir ^ 1; }

bool horizontal(int dir) { return dir < 2; }

struct Grid {
  Emu pitch;
  int cols;  // canvas columns; valid col range is [-1, cols]
  int rows;
  std::vector<EmuRect> obstacles;  // inflated

  bool in_range(int col, int row) const {
    return col >= -1 && col <= cols && row >= -1 && row <= rows;
  }

  bool blocked(int col, int row) const {
    Emu x0 = static_cast<Emu>(col) * pitch;
    Emu y0 = static_cast<Emu>(row) * pitch;
    Emu x1 = x0 + pitch;
    Emu y1 = y0 + pitch;
    for (const auto& o : obstacles) {
      if (x1 > o.x && x0 < o.right() && y1 > o.y && y0 < o.bottom()) return true;
    }
    return false;
  }

  int index(int col, int row) const { return (row + 1) * (cols + 2) + (col + 1); }
  int cell_count() const { return (cols + 2) * (rows + 2); }

  Emu center_x(int col) const { return static_cast<Emu>(col) * pitch + pitch / 2; }
  Emu center_y(int row) const { return static_cast<Emu>(row) * pitch + pitch / 2; }
};

struct Terminal {
  EmuPoint point;  // attachment point on the node side
  int col = 0;
  int row = 0;
  int heading = 0;  // travel direction when leaving (src) / arriving (dst)
  bool valid = false;
};

// Cell just outside the port's edge whose center lies on the outward side,
// in the grid row/column containing the attachment point.
Terminal make_terminal(const Grid& g, const EmuRect& bbox, Port port, bool is_source) {
  Terminal t;
  t.point = port_point(bbox, port);
  int out = dir_for_port_outward(port);
  t.heading = is_source ? out : opposite(out);

  if (horizontal(out)) {
    t.row = static_cast<int>(floor_div(t.point.y, g.pitch));
    Emu edge = t.point.x;
    int base = static_cast<int>(floor_div(edge, g.pitch));
    if (out == 0) {  // +x
      t.col = g.center_x(base) >= edge ? base : base + 1;
    } else {
      t.col = g.center_x(base) <= edge ? base : base - 1;
    }
  } else {
    t.col = static_cast<int>(floor_div(t.point.x, g.pitch));
    Emu edge = t.point.y;
    int base = static_cast<int>(floor_div(edge, g.pitch));
    if (out == 2) {  // +y
      t.row = g.center_y(base) >= edge ? base : base + 1;
    } else {
      t.row = g.center_y(base) <= edge ? base : base - 1;
    }
  }
  t.valid = g.in_range(t.col, t.row) && !g.blocked(t.col, t.row);
  return t;
}

struct CellStep {
  int col;
  int row;
  int heading;  // heading used to ENTER this cell
};

// Uniform-cost search over (cell, heading) states with lexicographic
// (bends, steps) cost. Deterministic: the queue orders equal costs by
// state id and relaxation replaces only on strict improvement.
bool search(const Grid& g, const Terminal& src, const Terminal& dst,
            std::vector<CellStep>& out_path, int& out_bends, int& out_steps) {
  const int n_states = g.cell_count() * 4;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> best_bends(n_states, kInf);
  std::vector<int> best_steps(n_states, kInf);
  std::vector<int> parent(n_states, -1);

  auto state_id = [&](int col, int row, int h) { return g.index(col, row) * 4 + h; };
  auto unpack = [&](int sid, int& col, int& row, int& h) {
    h = sid % 4;
    int cell = sid / 4;
    col = cell % (g.cols + 2) - 1;
    row = cell / (g.cols + 2) - 1;
  };

  using QItem = std::tuple<int, int, int>;  // bends, steps, state
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;

  int start = state_id(src.col, src.row, src.heading);
  int goal = state_id(dst.col, dst.row, dst.heading);
  best_bends[start] = 0;
  best_steps[start] = 0;
  queue.emplace(0, 0, start);

  while (!queue.empty()) {
    auto [bends, steps, sid] = queue.top();
    queue.pop();
    if (bends != best_bends[sid] || steps != best_steps[sid]) continue;
    if (sid == goal) break;

    int col, row, h;
    unpack(sid, col, row, h);
    for (int nh = 0; nh < 4; ++nh) {
      if (nh == opposite(h)) continue;  // no U-turns
      int ncol = col + kDirs[nh].dx;
      int nrow = row + kDirs[nh].dy;
      if (!g.in_range(ncol, nrow) || g.blocked(ncol, nrow)) continue;
      int nbends = bends + (nh == h ? 0 : 1);
      int nsteps = steps + 1;
      int nid = state_id(ncol, nrow, nh);
      if (nbends < best_bends[nid] ||
          (nbends == best_bends[nid] && nsteps < best_steps[nid])) {
        best_bends[nid] = nbends;
        best_steps[nid] = nsteps;
        parent[nid] = sid;
        queue.emplace(nbends, nsteps, nid);
      }
    }
  }

  if (best_bends[goal] == kInf) return false;
  out_bends = best_bends[goal];
  out_steps = best_steps[goal];

  out_path.clear();
  for (int sid = goal; sid != -1; sid = parent[sid]) {
    int col, row, h;
    unpack(sid, col, row, h);
    out_path.push_back(CellStep{col, row, h});
  }
  std::reverse(out_path.begin(), out_path.end());
  return true;
}

void append_point(std::vector<EmuPoint>& pts, EmuPoint p) {
  if (!pts.empty() && pts.back() == p) return;
  if (pts.size() >= 2) {
    // merge collinear extension
    const EmuPoint& a = pts[pts.size() - 2];
    const EmuPoint& b = pts.back();
    if ((a.x == b.x && b.x == p.x) || (a.y == b.y && b.y == p.y)) {
      pts.back() = p;
      return;
    }
  }
  pts.push_back(p);
}

void finalize(RoutedPath& path) {
  path.bends = 0;
  path.length = 0;
  const auto& w = path.waypoints;
  for (size_t i = 1; i < w.size(); ++i) {
    path.length += std::abs(w[i].x - w[i - 1].x) + std::abs(w[i].y - w[i - 1].y);
    if (i + 1 < w.size()) {
      bool h1 = w[i].y == w[i - 1].y;
      bool h2 = w[i + 1].y == w[i].y;
      if (h1 != h2) ++path.bends;
    }
  }
}

// Direct 3-segment elbow between attachment points, ignoring obstacles.
std::vector<EmuPoint> direct_elbow(EmuPoint a, Port pa, EmuPoint b) {
  std::vector<EmuPoint> pts;
  append_point(pts, a);
  if (horizontal(dir_for_port_outward(pa))) {
    Emu midx = (a.x + b.x) / 2;
    append_point(pts, EmuPoint{midx, a.y});
    append_point(pts, EmuPoint{midx, b.y});
  } else {
    Emu midy = (a.y + b.y) / 2;
    append_point(pts, EmuPoint{a.x, midy});
    append_point(pts, EmuPoint{b.x, midy});
  }
  append_point(pts, b);
  return pts;
}

// Straight run of same-heading steps.
struct Run {
  int heading;
  std::vector<CellStep> cells;
};

bool rects_overlap(const EmuRect& a, const EmuRect& b) {
  return a.x < b.right() && b.x < a.right() && a.y < b.bottom() && b.y < a.bottom();
}

}  // namespace

std::pair<Port, Port> anchor_ports(const EmuRect& src_bbox, const EmuRect& dst_bbox) {
  Emu dx = (dst_bbox.x * 2 + dst_bbox.w) - (src_bbox.x * 2 + src_bbox.w);
  Emu dy = (dst_bbox.y * 2 + dst_bbox.h) - (src_bbox.y * 2 + src_bbox.h);
  if (std::abs(dx) >= std::abs(dy)) {
    return dx >= 0 ? std::make_pair(Port::Right, Port::Left)
                   : std::make_pair(Port::Left, Port::Right);
  }
  return dy >= 0 ? std::make_pair(Port::Bottom, Port::Top)
                 : std::make_pair(Port::Top, Port::Bottom);
}

EmuPoint port_point(const EmuRect& bbox, Port p) {
  switch (p) {
    case Port::Top: return EmuPoint{bbox.x + bbox.w / 2, bbox.y};
    case Port::Bottom: return EmuPoint{bbox.x + bbox.w / 2, bbox.bottom()};
    case Port::Left: return EmuPoint{bbox.x, bbox.y + bbox.h / 2};
    case Port::Right: return EmuPoint{bbox.right(), bbox.y + bbox.h / 2};
  }
  return EmuPoint{bbox.x, bbox.y};
}

RoutedPath route_elbow(const SceneGraph& scene, const ConnectorSpec& connector,
                       const RouterConfig& config) {
  const Node* src = scene.find_node(connector.src);
  const Node* dst = scene.find_node(connector.dst);
  if (!src || !dst) {
    throw Error("DANGLING_ENDPOINT", connector.id, "route_elbow: endpoints must exist");
  }

  auto [src_port, dst_port] = anchor_ports(src->bbox, dst->bbox);
  EmuPoint ps = port_point(src->bbox, src_port);
  EmuPoint pd = port_point(dst->bbox, dst_port);

  RoutedPath path;

  if (rects_overlap(src->bbox, dst->bbox)) {
    // Overlapping endpoints: straight segment between the port centers.
    path.waypoints = {ps};
    append_point(path.waypoints, pd);
    if (path.waypoints.size() < 2) path.waypoints.push_back(pd);
    finalize(path);
    return path;
  }

  Grid grid;
  grid.pitch = config.pitch;
  grid.cols = static_cast<int>((scene.canvas.width + config.pitch - 1) / config.pitch);
  grid.rows = static_cast<int>((scene.canvas.height + config.pitch - 1) / config.pitch);
  for (const auto& n : scene.nodes) {
    if (n.id == connector.src || n.id == connector.dst) continue;
    grid.obstacles.push_back(EmuRect{n.bbox.x - config.clearance, n.bbox.y - config.clearance,
                                     n.bbox.w + 2 * config.clearance,
                                     n.bbox.h + 2 * config.clearance});
  }

  Terminal ts = make_terminal(grid, src->bbox, src_port, true);
  Terminal td = make_terminal(grid, dst->bbox, dst_port, false);

  std::vector<CellStep> cells;
  int grid_bends = 0, grid_steps = 0;
  bool found = ts.valid && td.valid && search(grid, ts, td, cells, grid_bends, grid_steps);

  if (!found) {
    path.waypoints = direct_elbow(ps, src_port, pd);
    path.fallback = true;
    finalize(path);
    return path;
  }

  path.grid_bends = grid_bends;
  path.grid_steps = grid_steps;

  // Group into straight runs, then emit one polyline coordinate per run:
  // interior runs sit on cell centers; the first and last runs are pulled
  // onto the exact attachment coordinates, which stays within the same
  // free cells because each port lies inside its terminal cell's band.
  std::vector<Run> runs;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i == 0 || cells[i].heading != runs.back().heading) {
      runs.push_back(Run{cells[i].heading, {}});
    }
    runs.back().cells.push_back(cells[i]);
  }

  auto cross_of = [&](const Run& r) -> Emu {
    // the coordinate held constant along the run
    return horizontal(r.heading) ? grid.center_y(r.cells.front().row)
                                 : grid.center_x(r.cells.front().col);
  };

  std::vector<Emu> cross(runs.size());
  for (size_t i = 0; i < runs.size(); ++i) cross[i] = cross_of(runs[i]);
  if (!runs.empty()) {
    cross.front() = horizontal(runs.front().heading) ? ps.y : ps.x;
    cross.back() = horizontal(runs.back().heading) ? pd.y : pd.x;
  }

  std::vector<EmuPoint>& pts = path.waypoints;
  append_point(pts, ps);
  if (runs.size() == 1) {
    bool h = horizontal(runs.front().heading);
    Emu c1 = h ? ps.y : ps.x;
    Emu c2 = h ? pd.y : pd.x;
    if (c1 != c2) {
      // jog through the middle cell of the single run
      const auto& rc = runs.front().cells;
      const CellStep& mid = rc[rc.size() / 2];
      Emu along = h ? grid.center_x(mid.col) : grid.center_y(mid.row);
      if (h) {
        append_point(pts, EmuPoint{along, c1});
        append_point(pts, EmuPoint{along, c2});
      } else {
        append_point(pts, EmuPoint{c1, along});
        append_point(pts, EmuPoint{c2, along});
      }
    }
  } else {
    for (size_t i = 0; i + 1 < runs.size(); ++i) {
      // bend where run i meets run i+1
      bool h = horizontal(runs[i].heading);
      Emu bx = h ? cross[i + 1] : cross[i];
      Emu by = h ? cross[i] : cross[i + 1];
      append_point(pts, EmuPoint{bx, by});
    }
  }
  append_point(pts, pd);
  if (pts.size() < 2) pts.push_back(pd);

  finalize(path);
  return path;
}

void route_all(SceneGraph& scene, const RouterConfig& config) {
  for (auto& c : scene.connectors) {
    const Node* src = scene.find_node(c.src);
    const Node* dst = scene.find_node(c.dst);
    if (!src || !dst) {
      throw Error("DANGLING_ENDPOINT", c.id, "route_all: scene must validate first");
    }
    auto [sp, dp] = anchor_ports(src->bbox, dst->bbox);
    c.src_port = sp;
    c.dst_port = dp;
    c.routed_fallback = false;
    if (c.kind == ConnectorKind::Elbow) {
      RoutedPath path = route_elbow(scene, c, config);
      c.waypoints = path.waypoints;
      c.routed_fallback = path.fallback;
    } else {
      c.waypoints.clear();
    }
  }
}

}  // namespace figforge::router
