#include "core/scene.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "core/error.hpp"

namespace figforge {

namespace {

double quantize(double value, double unit) {
  return std::llround(value * unit) / unit;
}

TextSpec quantized(TextSpec t) {
  t.font_size_pt = quantize(t.font_size_pt, 100.0);  // OpenXML sz granularity
  return t;
}

void require_positive_size(double w, double h, const std::string& skill) {
  if (!(w > 0.0) || !(h > 0.0)) {
    throw Error("NONPOSITIVE_SIZE", "size@" + skill,
                skill + ": width and height must be > 0");
  }
}

void require_font_size(double pt, const std::string& skill) {
  if (!(pt > 0.0)) {
    throw Error("BAD_FONT_SIZE", "font_size@" + skill, skill + ": font_size must be > 0");
  }
}

EmuRect rect_from_inches(double x, double y, double w, double h) {
  return EmuRect{emu_from_inches(x), emu_from_inches(y), emu_from_inches(w), emu_from_inches(h)};
}

std::string claim_id(SceneGraph& scene, const std::optional<std::string>& explicit_id,
                     const std::string& skill) {
  if (explicit_id) {
    if (explicit_id->empty()) {
      throw Error("BAD_ID", "id@" + skill, skill + ": element id must be non-empty");
    }
    if (scene.id_taken(*explicit_id)) {
      throw Error("DUPLICATE_ID", *explicit_id + "@" + skill,
                  skill + ": id '" + *explicit_id + "' already exists");
    }
    return *explicit_id;
  }
  return scene.fresh_id();
}

bool rects_overlap(const EmuRect& a, const EmuRect& b) {
  return a.x < b.right() && b.x < a.right() && a.y < b.bottom() && b.y < a.bottom();
}

}  // namespace

Color make_color(const std::string& value) {
  std::string v = value;
  if (!v.empty() && v[0] == '#') v.erase(0, 1);
  if (v.size() != 6) {
    throw Error("BAD_COLOR", value, "color must be 6 hex digits, got '" + value + "'");
  }
  for (char& c : v) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw Error("BAD_COLOR", value, "color must be 6 hex digits, got '" + value + "'");
    }
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return Color{v};
}

const std::vector<std::string>& shape_kind_names() {
  static const std::vector<std::string> names = {"rect", "rounded_rect", "ellipse", "diamond",
                                                 "folded_corner"};
  return names;
}

ShapeKind shape_kind_from_string(const std::string& s) {
  if (s == "rect") return ShapeKind::Rect;
  if (s == "rounded_rect") return ShapeKind::RoundedRect;
  if (s == "ellipse") return ShapeKind::Ellipse;
  if (s == "diamond") return ShapeKind::Diamond;
  if (s == "folded_corner") return ShapeKind::FoldedCorner;

  std::ostringstream msg;
  if (s == "line" || s == "straight_line") {
    msg << "shape kinds exclude lines; use add_connector";
  } else if (s == "doc_tag") {
    msg << "shape kind 'doc_tag' does not exist; use 'folded_corner' instead";
  } else {
    msg << "unknown shape kind '" << s << "'; valid kinds are";
    for (const auto& n : shape_kind_names()) msg << " " << n;
  }
  throw Error("BAD_SHAPE_KIND", s + "@add_block", msg.str());
}

std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rect: return "rect";
    case ShapeKind::RoundedRect: return "rounded_rect";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Diamond: return "diamond";
    case ShapeKind::FoldedCorner: return "folded_corner";
  }
  return "rect";
}

ConnectorKind connector_kind_from_string(const std::string& s) {
  if (s == "straight") return ConnectorKind::Straight;
  if (s == "elbow") return ConnectorKind::Elbow;
  if (s == "curve") return ConnectorKind::Curve;
  std::string msg = "unknown connector kind '" + s + "'; valid kinds are straight elbow curve";
  if (s == "curved") msg = "connector kind 'curved' is invalid; use 'curve'";
  throw Error("BAD_CONNECTOR_KIND", s + "@add_connector", msg);
}

std::string to_string(ConnectorKind k) {
  switch (k) {
    case ConnectorKind::Straight: return "straight";
    case ConnectorKind::Elbow: return "elbow";
    case ConnectorKind::Curve: return "curve";
  }
  return "straight";
}

ArrowHead arrow_head_from_string(const std::string& s) {
  if (s == "none") return ArrowHead::None;
  if (s == "small") return ArrowHead::Small;
  if (s == "medium") return ArrowHead::Medium;
  if (s == "large") return ArrowHead::Large;
  throw Error("BAD_ARROWHEAD", s + "@add_connector",
              "unknown arrow_head '" + s + "'; valid sizes are none small medium large");
}

std::string to_string(ArrowHead a) {
  switch (a) {
    case ArrowHead::None: return "none";
    case ArrowHead::Small: return "small";
    case ArrowHead::Medium: return "medium";
    case ArrowHead::Large: return "large";
  }
  return "medium";
}

std::string to_string(Port p) {
  switch (p) {
    case Port::Top: return "top";
    case Port::Bottom: return "bottom";
    case Port::Left: return "left";
    case Port::Right: return "right";
  }
  return "top";
}

const Node* SceneGraph::find_node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

Node* SceneGraph::find_node(const std::string& id) {
  for (auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

bool SceneGraph::id_taken(const std::string& id) const {
  if (find_node(id)) return true;
  for (const auto& c : connectors)
    if (c.id == id) return true;
  return false;
}

std::string SceneGraph::fresh_id() {
  std::string id;
  do {
    id = "e" + std::to_string(next_auto_id_++);
  } while (id_taken(id));
  return id;
}

std::string add_container(SceneGraph& scene, const ContainerParams& p) {
  require_positive_size(p.w, p.h, "add_container");
  if (p.alpha < 0.0 || p.alpha > 1.0) {
    throw Error("ALPHA_RANGE", "alpha@add_container", "add_container: alpha must be in [0, 1]");
  }
  std::string id = claim_id(scene, p.id, "add_container");
  ContainerData data;
  data.fill = p.fill;
  data.stroke = p.stroke;
  data.alpha = alpha_from_pct_thousandths(alpha_pct_thousandths(p.alpha));
  if (p.title) {
    require_font_size(p.title_font_size_pt, "add_container");
    TextSpec title;
    title.content = *p.title;
    title.font_size_pt = p.title_font_size_pt;
    title.bold = true;  // container titles render bold at top-inside
    data.title = quantized(title);
  }
  scene.nodes.push_back(Node{id, rect_from_inches(p.x, p.y, p.w, p.h), std::move(data)});
  return id;
}

std::string add_block(SceneGraph& scene, const BlockParams& p) {
  require_positive_size(p.w, p.h, "add_block");
  require_font_size(p.font_size_pt, "add_block");
  std::string id = claim_id(scene, p.id, "add_block");
  BlockData data;
  data.shape_kind = p.shape_kind;
  data.fill = p.fill;
  data.stroke = p.stroke;
  data.label.content = p.text;
  data.label.font_size_pt = p.font_size_pt;
  data.label.bold = p.bold;
  data.label = quantized(data.label);
  scene.nodes.push_back(Node{id, rect_from_inches(p.x, p.y, p.w, p.h), std::move(data)});
  return id;
}

std::string add_text(SceneGraph& scene, const TextParams& p) {
  require_positive_size(p.w, p.h, "add_text");
  if (p.text.content.empty()) {
    throw Error("EMPTY_TEXT", "text@add_text", "add_text: content must be non-empty");
  }
  require_font_size(p.text.font_size_pt, "add_text");
  std::string id = claim_id(scene, p.id, "add_text");
  scene.nodes.push_back(
      Node{id, rect_from_inches(p.x, p.y, p.w, p.h), TextBoxData{quantized(p.text)}});
  return id;
}

std::string add_icon(SceneGraph& scene, const IconParams& p) {
  require_positive_size(p.w, p.h, "add_icon");
  if (!scene.assets.count(p.asset_id)) {
    throw Error("UNRESOLVED_ASSET", p.asset_id + "@add_icon",
                "add_icon: asset '" + p.asset_id + "' is not registered");
  }
  std::string id = claim_id(scene, p.id, "add_icon");
  scene.nodes.push_back(Node{id, rect_from_inches(p.x, p.y, p.w, p.h), IconData{p.asset_id}});
  return id;
}

std::string add_connector(SceneGraph& scene, const ConnectorParams& p) {
  if (p.src == p.dst) {
    throw Error("SELF_LOOP", p.src + "@add_connector",
                "add_connector: src and dst must differ (self-loops unsupported)");
  }
  for (const auto& end : {p.src, p.dst}) {
    if (scene.find_node(end)) continue;
    bool is_connector = std::any_of(scene.connectors.begin(), scene.connectors.end(),
                                    [&](const ConnectorSpec& c) { return c.id == end; });
    if (is_connector) {
      throw Error("ENDPOINT_IS_CONNECTOR", end + "@add_connector",
                  "add_connector: endpoint '" + end + "' is a connector, not a node");
    }
    throw Error("DANGLING_ENDPOINT", end + "@add_connector",
                "add_connector: endpoint '" + end + "' does not exist");
  }
  if (!(p.line_width_pt > 0.0)) {
    throw Error("BAD_LINE_WIDTH", "line_width@add_connector",
                "add_connector: line_width must be > 0");
  }
  std::string id = claim_id(scene, p.id, "add_connector");
  ConnectorSpec c;
  c.id = id;
  c.src = p.src;
  c.dst = p.dst;
  c.kind = p.kind;
  c.arrow_head = p.arrow_head;
  c.line_width_pt = points_from_emu(emu_from_points(p.line_width_pt));
  c.color = p.color;
  scene.connectors.push_back(std::move(c));
  return id;
}

void register_asset(SceneGraph& scene, const std::string& asset_id, AssetRef ref) {
  if (asset_id.empty()) {
    throw Error("BAD_ID", "asset_id@register_asset", "asset id must be non-empty");
  }
  scene.assets[asset_id] = std::move(ref);
}

std::vector<Violation> validate(const SceneGraph& scene) {
  std::vector<Violation> out;
  auto flag = [&](std::string code, std::string element_id, std::string construct,
                  std::string message) {
    out.push_back(Violation{std::move(code), std::move(element_id), std::move(construct),
                            std::move(message)});
  };

  if (scene.canvas.width <= 0 || scene.canvas.height <= 0) {
    flag("BAD_CANVAS", "", "canvas", "canvas dimensions must be positive");
  }

  std::map<std::string, int> seen;
  for (const auto& n : scene.nodes) seen[n.id]++;
  for (const auto& c : scene.connectors) seen[c.id]++;
  for (const auto& [id, count] : seen) {
    if (count > 1) flag("DUPLICATE_ID", id, id, "id '" + id + "' appears " + std::to_string(count) + " times");
  }

  for (const auto& n : scene.nodes) {
    if (n.bbox.w <= 0 || n.bbox.h <= 0) {
      flag("NONPOSITIVE_SIZE", n.id, n.id, "node '" + n.id + "' has a non-positive size");
    }
    if (const auto* c = std::get_if<ContainerData>(&n.data)) {
      if (c->alpha < 0.0 || c->alpha > 1.0) {
        flag("ALPHA_RANGE", n.id, n.id, "container '" + n.id + "' alpha outside [0, 1]");
      }
    } else if (const auto* icon = std::get_if<IconData>(&n.data)) {
      if (!scene.assets.count(icon->asset_id)) {
        flag("UNRESOLVED_ASSET", n.id, icon->asset_id + "@" + n.id,
             "icon '" + n.id + "' references missing asset '" + icon->asset_id + "'");
      }
    }
  }

  for (const auto& c : scene.connectors) {
    for (const auto& end : {c.src, c.dst}) {
      if (scene.find_node(end)) continue;
      bool is_connector = std::any_of(scene.connectors.begin(), scene.connectors.end(),
                                      [&](const ConnectorSpec& o) { return o.id == end; });
      if (is_connector) {
        flag("ENDPOINT_IS_CONNECTOR", c.id, end + "@" + c.id,
             "connector '" + c.id + "' endpoint '" + end + "' is a connector");
      } else {
        flag("DANGLING_ENDPOINT", c.id, end + "@" + c.id,
             "connector '" + c.id + "' endpoint '" + end + "' does not exist");
      }
    }
    if (c.src == c.dst) {
      flag("SELF_LOOP", c.id, c.id, "connector '" + c.id + "' is a self-loop");
    }
  }

  // Containers must precede the overlapping contents they group.
  for (size_t i = 0; i < scene.nodes.size(); ++i) {
    if (!scene.nodes[i].is_container()) continue;
    for (size_t j = 0; j < i; ++j) {
      if (scene.nodes[j].is_container()) continue;
      if (rects_overlap(scene.nodes[i].bbox, scene.nodes[j].bbox)) {
        flag("CONTAINER_ABOVE_CONTENT", scene.nodes[i].id,
             scene.nodes[i].id + ">" + scene.nodes[j].id,
             "container '" + scene.nodes[i].id + "' is drawn above overlapping element '" +
                 scene.nodes[j].id + "'; add containers first");
        break;
      }
    }
  }

  return out;
}

}  // namespace figforge
