#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/units.hpp"

namespace figforge {

// 6 uppercase hex digits, normalized on construction via make_color().
struct Color {
  std::string rgb = "000000";
  bool operator==(const Color&) const = default;
};

// Throws Error("BAD_COLOR") unless value normalizes to 6 hex digits.
Color make_color(const std::string& value);

enum class Align { Left, Center, Right };

struct TextSpec {
  std::string content;
  double font_size_pt = 14.0;  // quantized to 0.01 pt
  Color color{"000000"};
  Align align = Align::Center;
  bool bold = false;
  bool operator==(const TextSpec&) const = default;
};

enum class ShapeKind { Rect, RoundedRect, Ellipse, Diamond, FoldedCorner };

// Line-like kinds are excluded by construction: connectors are the only
// way to draw an edge.
const std::vector<std::string>& shape_kind_names();
ShapeKind shape_kind_from_string(const std::string& s);  // throws BAD_SHAPE_KIND
std::string to_string(ShapeKind k);

struct ContainerData {
  std::optional<TextSpec> title;
  Color fill{"F5F5F5"};
  Color stroke{"CCCCCC"};
  double alpha = 1.0;  // quantized to per-cent-thousandths
  bool operator==(const ContainerData&) const = default;
};

struct BlockData {
  ShapeKind shape_kind = ShapeKind::Rect;
  Color fill{"FFFFFF"};
  Color stroke{"000000"};
  TextSpec label;
  bool operator==(const BlockData&) const = default;
};

struct TextBoxData {
  TextSpec text;
  bool operator==(const TextBoxData&) const = default;
};

struct IconData {
  std::string asset_id;
  bool operator==(const IconData&) const = default;
};

struct Node {
  std::string id;
  EmuRect bbox;
  std::variant<ContainerData, BlockData, TextBoxData, IconData> data;
  bool operator==(const Node&) const = default;

  bool is_container() const { return std::holds_alternative<ContainerData>(data); }
};

enum class ConnectorKind { Straight, Elbow, Curve };
ConnectorKind connector_kind_from_string(const std::string& s);  // throws BAD_CONNECTOR_KIND
std::string to_string(ConnectorKind k);

enum class ArrowHead { None, Small, Medium, Large };
ArrowHead arrow_head_from_string(const std::string& s);  // throws BAD_ARROWHEAD
std::string to_string(ArrowHead a);

enum class Port { Top, Bottom, Left, Right };
std::string to_string(Port p);

// Typed edge between two nodes. Structurally there is no fill field:
// connectors carry line styling only.
struct ConnectorSpec {
  std::string id;
  std::string src;
  std::string dst;
  ConnectorKind kind = ConnectorKind::Straight;
  ArrowHead arrow_head = ArrowHead::Medium;
  double line_width_pt = 1.75;  // quantized to 1/12700 pt
  Color color{"000000"};
  std::optional<Port> src_port;  // filled by the router
  std::optional<Port> dst_port;
  std::vector<EmuPoint> waypoints;   // elbow only, filled by the router
  bool routed_fallback = false;      // advisory, not persisted in archives

  bool operator==(const ConnectorSpec& o) const {
    // routed_fallback is transient state, not part of structural identity.
    return id == o.id && src == o.src && dst == o.dst && kind == o.kind &&
           arrow_head == o.arrow_head && line_width_pt == o.line_width_pt &&
           color == o.color && src_port == o.src_port && dst_port == o.dst_port &&
           waypoints == o.waypoints;
  }
};

struct Canvas {
  Emu width = kDefaultCanvasWidth;
  Emu height = kDefaultCanvasHeight;
  bool operator==(const Canvas&) const = default;
};

struct AssetRef {
  std::string path;                 // file reference; may be empty when bytes given
  std::vector<std::uint8_t> bytes;  // in-memory image, wins over path
  bool operator==(const AssetRef&) const = default;
};

// Structural violation reported by validate(); these are data, not
// failures, and feed the debug loop as error signatures.
struct Violation {
  std::string code;
  std::string element_id;
  std::string construct;  // offending construct for experience distillation
  std::string message;
};

struct SceneGraph {
  Canvas canvas;
  std::vector<Node> nodes;  // z-order, back to front
  std::vector<ConnectorSpec> connectors;
  std::map<std::string, AssetRef> assets;

  const Node* find_node(const std::string& id) const;
  Node* find_node(const std::string& id);
  bool id_taken(const std::string& id) const;

  // "e{counter}" ids; explicit ids win, the generator skips taken ones.
  std::string fresh_id();

  bool operator==(const SceneGraph& o) const {
    return canvas == o.canvas && nodes == o.nodes && connectors == o.connectors &&
           assets == o.assets;
  }

 private:
  int next_auto_id_ = 1;
};

// -- Standardized skills ------------------------------------------------
//
// The high-level drawing primitives the blueprint DSL is compiled from.
// Coordinates are raw inch floats; sizes must be positive. Each returns
// the fresh (or explicitly supplied) element id. Errors throw Error with
// a stable code.

struct ContainerParams {
  double x = 0, y = 0, w = 0, h = 0;  // inches
  std::optional<std::string> title;
  Color fill{"F5F5F5"};
  Color stroke{"CCCCCC"};
  double alpha = 1.0;
  double title_font_size_pt = 14.0;
  std::optional<std::string> id;
};
std::string add_container(SceneGraph& scene, const ContainerParams& p);

struct BlockParams {
  double x = 0, y = 0, w = 0, h = 0;
  std::string text;
  ShapeKind shape_kind = ShapeKind::Rect;
  Color fill{"FFFFFF"};
  Color stroke{"000000"};
  double font_size_pt = 14.0;
  bool bold = false;
  std::optional<std::string> id;
};
std::string add_block(SceneGraph& scene, const BlockParams& p);

struct TextParams {
  double x = 0, y = 0, w = 0, h = 0;
  TextSpec text;
  std::optional<std::string> id;
};
std::string add_text(SceneGraph& scene, const TextParams& p);

struct IconParams {
  std::string asset_id;
  double x = 0, y = 0, w = 0, h = 0;
  std::optional<std::string> id;
};
std::string add_icon(SceneGraph& scene, const IconParams& p);

struct ConnectorParams {
  std::string src;
  std::string dst;
  ConnectorKind kind = ConnectorKind::Straight;
  ArrowHead arrow_head = ArrowHead::Medium;
  double line_width_pt = 1.75;
  Color color{"000000"};
  std::optional<std::string> id;
};
std::string add_connector(SceneGraph& scene, const ConnectorParams& p);

void register_asset(SceneGraph& scene, const std::string& asset_id, AssetRef ref);

// Empty list iff all SceneGraph invariants hold.
std::vector<Violation> validate(const SceneGraph& scene);

}  // namespace figforge
