#include "core/lint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"
#include "core/router.hpp"

namespace figforge::lint {

namespace {

struct Rat {
  long long num;
  long long den;  // > 0
};

int cmp(Rat a, Rat b) {
  __int128 l = static_cast<__int128>(a.num) * b.den;
  __int128 r = static_cast<__int128>(b.num) * a.den;
  return l < r ? -1 : l > r ? 1 : 0;
}

std::string fmt_inches(Emu e) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", inches_from_emu(e));
  return buf;
}

const TextSpec* node_text(const Node& n) {
  if (const auto* c = std::get_if<ContainerData>(&n.data)) return c->title ? &*c->title : nullptr;
  if (const auto* b = std::get_if<BlockData>(&n.data)) return &b->label;
  if (const auto* t = std::get_if<TextBoxData>(&n.data)) return &t->text;
  return nullptr;
}

std::vector<std::pair<EmuPoint, EmuPoint>> connector_segments(const SceneGraph& scene,
                                                              const ConnectorSpec& c) {
  std::vector<std::pair<EmuPoint, EmuPoint>> segments;
  if (c.kind == ConnectorKind::Elbow && c.waypoints.size() >= 2) {
    for (size_t i = 1; i < c.waypoints.size(); ++i) {
      segments.emplace_back(c.waypoints[i - 1], c.waypoints[i]);
    }
    return segments;
  }
  const Node* src = scene.find_node(c.src);
  const Node* dst = scene.find_node(c.dst);
  if (src && dst && c.src_port && c.dst_port) {
    // straight connectors exactly; curves approximated by their chord
    segments.emplace_back(router::port_point(src->bbox, *c.src_port),
                          router::port_point(dst->bbox, *c.dst_port));
  }
  return segments;
}

void require_routed(const SceneGraph& scene) {
  for (const auto& c : scene.connectors) {
    if (!c.src_port || !c.dst_port ||
        (c.kind == ConnectorKind::Elbow && c.waypoints.size() < 2)) {
      throw Error("UNROUTED_CONNECTOR", c.id, "lint requires a routed scene; run route_all first");
    }
  }
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::string to_string(Category c) {
  switch (c) {
    case Category::Boundaries: return "BOUNDARIES";
    case Category::Connectors: return "CONNECTORS";
    case Category::Text: return "TEXT";
    case Category::Alignment: return "ALIGNMENT";
    case Category::Style: return "STYLE";
  }
  return "STYLE";
}

bool segment_intersects_rect_interior(EmuPoint a, EmuPoint b, const EmuRect& rect) {
  if (rect.w <= 0 || rect.h <= 0) return false;
  bool has_lo = false, has_hi = false;
  Rat lo{0, 1}, hi{0, 1};

  auto apply_axis = [&](long long pa, long long d, long long min_v, long long max_v) -> bool {
    if (d == 0) return pa > min_v && pa < max_v;
    long long den = d;
    long long n1 = min_v - pa;
    long long n2 = max_v - pa;
    if (den < 0) {
      den = -den;
      n1 = -n1;
      n2 = -n2;
    }
    Rat t1{std::min(n1, n2), den};
    Rat t2{std::max(n1, n2), den};
    if (!has_lo || cmp(t1, lo) > 0) {
      lo = t1;
      has_lo = true;
    }
    if (!has_hi || cmp(t2, hi) < 0) {
      hi = t2;
      has_hi = true;
    }
    return true;
  };

  if (!apply_axis(a.x, b.x - a.x, rect.x, rect.right())) return false;
  if (!apply_axis(a.y, b.y - a.y, rect.y, rect.bottom())) return false;

  Rat zero{0, 1}, one{1, 1};
  if (has_lo && has_hi && cmp(lo, hi) >= 0) return false;  // the open window is empty
  if (has_hi && cmp(hi, zero) <= 0) return false;          // window ends before the segment
  if (has_lo && cmp(lo, one) >= 0) return false;           // window starts after the segment
  return true;
}

double relative_luminance(const Color& color) {
  auto channel = [&](int idx) {
    int v = std::stoi(color.rgb.substr(idx * 2, 2), nullptr, 16);
    double c = v / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  };
  return 0.2126 * channel(0) + 0.7152 * channel(1) + 0.0722 * channel(2);
}

IssueList lint_boundaries(const SceneGraph& scene, const LintConfig& config) {
  require_routed(scene);
  IssueList issues;
  const Emu W = scene.canvas.width, H = scene.canvas.height, tol = config.boundary_tolerance;

  auto check_extent = [&](const std::string& id, Emu min_x, Emu min_y, Emu max_x, Emu max_y,
                          const std::string& what) {
    std::vector<std::string> sides;
    std::vector<std::string> moves;
    if (max_x > W + tol) {
      sides.push_back("RIGHT edge by " + fmt_inches(max_x - W) + " in");
      moves.push_back("LEFT by approximately " + fmt_inches(max_x - W) + " inches");
    }
    if (min_x < -tol) {
      sides.push_back("LEFT edge by " + fmt_inches(-min_x) + " in");
      moves.push_back("RIGHT by approximately " + fmt_inches(-min_x) + " inches");
    }
    if (max_y > H + tol) {
      sides.push_back("BOTTOM edge by " + fmt_inches(max_y - H) + " in");
      moves.push_back("UP by approximately " + fmt_inches(max_y - H) + " inches");
    }
    if (min_y < -tol) {
      sides.push_back("TOP edge by " + fmt_inches(-min_y) + " in");
      moves.push_back("DOWN by approximately " + fmt_inches(-min_y) + " inches");
    }
    if (sides.empty()) return;
    std::string desc = "The " + what + " '" + id + "' is clipped: it exits the canvas " +
                       sides.front();
    for (size_t i = 1; i < sides.size(); ++i) desc += " and the " + sides[i];
    std::string fix = "Shift '" + id + "' " + moves.front();
    for (size_t i = 1; i < moves.size(); ++i) fix += " and " + moves[i];
    issues.push_back(Issue{Category::Boundaries, desc, fix + ".", {id}});
  };

  for (const auto& n : scene.nodes) {
    check_extent(n.id, n.bbox.x, n.bbox.y, n.bbox.right(), n.bbox.bottom(), "element");
  }
  for (const auto& c : scene.connectors) {
    Emu min_x = W, min_y = H, max_x = 0, max_y = 0;
    bool any = false;
    for (const auto& [p, q] : connector_segments(scene, c)) {
      for (const auto& pt : {p, q}) {
        min_x = std::min(min_x, pt.x);
        max_x = std::max(max_x, pt.x);
        min_y = std::min(min_y, pt.y);
        max_y = std::max(max_y, pt.y);
        any = true;
      }
    }
    if (any) check_extent(c.id, min_x, min_y, max_x, max_y, "connector");
  }
  return issues;
}

IssueList lint_connectors(const SceneGraph& scene, const LintConfig& config) {
  require_routed(scene);
  IssueList issues;
  for (const auto& c : scene.connectors) {
    auto segments = connector_segments(scene, c);

    for (const auto& n : scene.nodes) {
      if (n.id == c.src || n.id == c.dst) continue;
      bool crosses = false;
      for (const auto& [p, q] : segments) {
        if (segment_intersects_rect_interior(p, q, n.bbox)) {
          crosses = true;
          break;
        }
      }
      if (crosses) {
        issues.push_back(Issue{
            Category::Connectors,
            "SEVERE: the arrow from '" + c.src + "' to '" + c.dst + "' crosses THROUGH '" +
                n.id + "'",
            "Reroute the arrow between '" + c.src + "' and '" + c.dst + "' to avoid crossing '" +
                n.id + "'.",
            {c.id, n.id}});
      }
    }

    if (c.routed_fallback) {
      issues.push_back(Issue{Category::Connectors,
                             "No obstacle-free route was found for the arrow from '" + c.src +
                                 "' to '" + c.dst + "' (direct fallback in use)",
                             "Create clearance around '" + c.src + "' and '" + c.dst +
                                 "' so the arrow can route around obstacles.",
                             {c.id}});
    }

    if (c.line_width_pt < config.line_width_min_pt || c.line_width_pt > config.line_width_max_pt) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f", c.line_width_pt);
      issues.push_back(Issue{Category::Connectors,
                             "Line width of '" + c.id + "' is " + buf +
                                 " pt, outside the 1.5 pt - 2.0 pt range",
                             "Set line width to 1.5 pt.",
                             {c.id}});
    }

    if (c.arrow_head == ArrowHead::Large) {
      issues.push_back(Issue{Category::Connectors,
                             "Arrowhead of '" + c.id + "' is too large and may obscure content",
                             "Reduce arrowhead size to Medium.",
                             {c.id}});
    }
  }
  return issues;
}

IssueList lint_text(const SceneGraph& scene, const LintConfig& config) {
  require_routed(scene);
  IssueList issues;
  for (const auto& n : scene.nodes) {
    const TextSpec* t = node_text(n);
    if (!t || t->content.empty()) continue;

    auto extent = render::estimate_text_extent(*t, n.bbox.w, config.text_metrics);
    if (extent.width > n.bbox.w || extent.height > n.bbox.h) {
      issues.push_back(Issue{Category::Text,
                             "Text of '" + n.id + "' spills out of its container",
                             "Widen '" + n.id + "' to fit the text or shorten the label.",
                             {n.id}});
    }

    if (relative_luminance(t->color) > config.dark_luminance) {
      issues.push_back(Issue{Category::Text,
                             "The '" + n.id + "' label color #" + t->color.rgb +
                                 " is too light to read",
                             "Change font color to BLACK.",
                             {n.id}});
    }

    if (t->font_size_pt < config.min_font_pt) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.4g", config.min_font_pt);
      issues.push_back(Issue{Category::Text,
                             "Font size of '" + n.id + "' is too small to read",
                             "Increase the font size of '" + n.id + "' to at least " +
                                 std::string(buf) + " pt.",
                             {n.id}});
    }
  }
  return issues;
}

IssueList lint_alignment(const SceneGraph& scene, const LintConfig& config) {
  require_routed(scene);
  IssueList issues;
  std::vector<const Node*> siblings;
  for (const auto& n : scene.nodes) {
    if (!n.is_container()) siblings.push_back(&n);
  }

  struct EdgeProbe {
    const char* name;
    Emu (*get)(const EmuRect&);
  };
  static const EdgeProbe probes[] = {
      {"top", [](const EmuRect& r) { return r.y; }},
      {"bottom", [](const EmuRect& r) { return r.bottom(); }},
      {"left", [](const EmuRect& r) { return r.x; }},
      {"right", [](const EmuRect& r) { return r.right(); }},
  };

  for (size_t i = 0; i < siblings.size(); ++i) {
    for (size_t j = i + 1; j < siblings.size(); ++j) {
      const Node& a = *siblings[i];
      const Node& b = *siblings[j];
      for (const auto& probe : probes) {
        Emu delta = std::abs(probe.get(a.bbox) - probe.get(b.bbox));
        if (delta > 0 && delta <= config.alignment_snap) {
          issues.push_back(Issue{Category::Alignment,
                                 std::string("The ") + probe.name + " edges of '" + a.id +
                                     "' and '" + b.id + "' differ by " + fmt_inches(delta) +
                                     " in (near miss)",
                                 std::string("Snap the ") + probe.name + " edge of '" + b.id +
                                     "' to match '" + a.id + "'.",
                                 {a.id, b.id}});
          break;  // one issue per pair
        }
      }
    }
  }

  for (size_t i = 0; i < siblings.size(); ++i) {
    for (size_t j = i + 1; j < siblings.size(); ++j) {
      const EmuRect& ra = siblings[i]->bbox;
      const EmuRect& rb = siblings[j]->bbox;
      if (ra.x < rb.right() && rb.x < ra.right() && ra.y < rb.bottom() && rb.y < ra.bottom()) {
        issues.push_back(Issue{Category::Alignment,
                               "'" + siblings[i]->id + "' and '" + siblings[j]->id + "' overlap",
                               "Move '" + siblings[j]->id + "' so it does not overlap '" +
                                   siblings[i]->id + "'.",
                               {siblings[i]->id, siblings[j]->id}});
      }
    }
  }
  return issues;
}

IssueList run_lints(const SceneGraph& scene, const LintConfig& config) {
  IssueList all = lint_boundaries(scene, config);
  IssueList connectors = lint_connectors(scene, config);
  IssueList text = lint_text(scene, config);
  IssueList alignment = lint_alignment(scene, config);
  all.insert(all.end(), connectors.begin(), connectors.end());
  all.insert(all.end(), text.begin(), text.end());
  all.insert(all.end(), alignment.begin(), alignment.end());
  return all;
}

std::string serialize_issue_list(const IssueList& issues) {
  std::ostringstream out;
  for (size_t i = 0; i < issues.size(); ++i) {
    out << (i + 1) << ". [" << to_string(issues[i].category) << "] " << issues[i].description
        << " -> " << issues[i].fix << "\n";
  }
  return out.str();
}

IssueList parse_issue_list(const std::string& text) {
  IssueList out;
  std::istringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;

    size_t pos = 0;
    while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > 0 && pos < line.size() && line[pos] == '.') ++pos;
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;

    if (pos >= line.size() || line[pos] != '[') {
      throw Error("ISSUE_GRAMMAR",
                  "line " + std::to_string(line_no) + ": expected '[CATEGORY]' prefix");
    }
    size_t close = line.find(']', pos);
    if (close == std::string::npos) {
      throw Error("ISSUE_GRAMMAR", "line " + std::to_string(line_no) + ": unterminated category");
    }
    std::string cat = line.substr(pos + 1, close - pos - 1);
    Category category;
    if (cat == "BOUNDARIES") category = Category::Boundaries;
    else if (cat == "CONNECTORS") category = Category::Connectors;
    else if (cat == "TEXT") category = Category::Text;
    else if (cat == "ALIGNMENT") category = Category::Alignment;
    else if (cat == "STYLE") category = Category::Style;
    else
      throw Error("UNKNOWN_CATEGORY",
                  "line " + std::to_string(line_no) + ": unknown category [" + cat + "]");

    size_t arrow = line.find("->", close + 1);
    if (arrow == std::string::npos) {
      throw Error("ISSUE_GRAMMAR",
                  "line " + std::to_string(line_no) + ": missing '->' separator");
    }
    std::string description = trim(line.substr(close + 1, arrow - close - 1));
    std::string fix = trim(line.substr(arrow + 2));
    if (description.empty() || fix.empty()) {
      throw Error("ISSUE_GRAMMAR",
                  "line " + std::to_string(line_no) + ": description and fix must be non-empty");
    }
    out.push_back(Issue{category, description, fix, {}});
  }
  return out;
}

}  // namespace figforge::lint
