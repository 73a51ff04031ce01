#include "core/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "core/error.hpp"
#include "core/router.hpp"
#include "core/xml.hpp"

namespace figforge::render {

namespace {

constexpr double kEmuPerUnit = 9525.0;  // 96 units per inch

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string units(Emu e) { return num(static_cast<double>(e) / kEmuPerUnit); }

double to_units(Emu e) { return static_cast<double>(e) / kEmuPerUnit; }

double arrow_len_pt(ArrowHead a) {
  switch (a) {
    case ArrowHead::None: return 0;
    case ArrowHead::Small: return 6;
    case ArrowHead::Medium: return 9;
    case ArrowHead::Large: return 13;
  }
  return 9;
}

struct SvgWriter {
  std::ostringstream out;

  void open(const std::string& tag) { out << "<" << tag; }
  void attr(const std::string& k, const std::string& v) {
    out << " " << k << "=\"" << xml::escape_attr(v) << "\"";
  }
  void close_empty() { out << "/>\n"; }
  void close_open() { out << ">"; }
  void end(const std::string& tag) { out << "</" << tag << ">\n"; }
};

void write_text(SvgWriter& svg, const TextSpec& t, const EmuRect& box, bool anchored_top) {
  double font_px = t.font_size_pt * 96.0 / 72.0;
  double x;
  std::string anchor;
  switch (t.align) {
    case Align::Left:
      x = to_units(box.x) + 2;
      anchor = "start";
      break;
    case Align::Right:
      x = to_units(box.right()) - 2;
      anchor = "end";
      break;
    default:
      x = to_units(box.x) + to_units(box.w) / 2.0;
      anchor = "middle";
  }
  double y = anchored_top ? to_units(box.y) + font_px : to_units(box.y) + to_units(box.h) / 2.0;
  svg.open("text");
  svg.attr("x", num(x));
  svg.attr("y", num(y));
  svg.attr("text-anchor", anchor);
  if (!anchored_top) svg.attr("dominant-baseline", "central");
  svg.attr("font-size", num(font_px));
  svg.attr("font-family", "sans-serif");
  if (t.bold) svg.attr("font-weight", "bold");
  svg.attr("fill", "#" + t.color.rgb);
  svg.close_open();
  svg.out << xml::escape_text(t.content);
  svg.end("text");
}

void write_polyline(SvgWriter& svg, const std::vector<EmuPoint>& pts, const ConnectorSpec& c) {
  svg.open("polyline");
  std::string points;
  for (const auto& p : pts) {
    if (!points.empty()) points += " ";
    points += units(p.x) + "," + units(p.y);
  }
  svg.attr("data-id", c.id);
  svg.attr("points", points);
  svg.attr("fill", "none");
  svg.attr("stroke", "#" + c.color.rgb);
  svg.attr("stroke-width", num(c.line_width_pt * 96.0 / 72.0));
  svg.close_empty();
}

void write_arrowhead(SvgWriter& svg, EmuPoint tip, EmuPoint from, const ConnectorSpec& c) {
  double len = arrow_len_pt(c.arrow_head);
  if (len <= 0) return;
  double len_px = len * 96.0 / 72.0;
  double half_w = len_px * 0.4;
  double dx = to_units(tip.x) - to_units(from.x);
  double dy = to_units(tip.y) - to_units(from.y);
  double mag = std::sqrt(dx * dx + dy * dy);
  if (mag < 1e-9) return;
  dx /= mag;
  dy /= mag;
  double bx = to_units(tip.x) - dx * len_px;
  double by = to_units(tip.y) - dy * len_px;
  double nx = -dy, ny = dx;
  svg.open("polygon");
  svg.attr("data-id", c.id);
  svg.attr("points", num(to_units(tip.x)) + "," + num(to_units(tip.y)) + " " +
                         num(bx + nx * half_w) + "," + num(by + ny * half_w) + " " +
                         num(bx - nx * half_w) + "," + num(by - ny * half_w));
  svg.attr("fill", "#" + c.color.rgb);
  svg.close_empty();
}

}  // namespace

TextExtent estimate_text_extent(const TextSpec& text, Emu box_width,
                                const TextMetrics& metrics) {
  if (!(text.font_size_pt > 0)) throw Error("BAD_FONT_SIZE", "font size must be > 0");
  TextExtent out;
  if (text.content.empty()) return out;

  Emu char_w = std::llround(text.font_size_pt * metrics.char_width_factor *
                            static_cast<double>(kEmuPerPoint));
  Emu line_h = std::llround(text.font_size_pt * metrics.line_height_factor *
                            static_cast<double>(kEmuPerPoint));

  std::vector<std::string> words;
  std::istringstream ss(text.content);
  std::string w;
  while (ss >> w) words.push_back(w);
  if (words.empty()) words.push_back("");

  Emu widest = 0;
  Emu line = 0;
  int lines = 1;
  for (const auto& word : words) {
    Emu word_w = static_cast<Emu>(word.size()) * char_w;
    if (line == 0) {
      line = word_w;
    } else if (line + char_w + word_w <= box_width) {
      line += char_w + word_w;  // joining space costs one glyph
    } else {
      widest = std::max(widest, line);
      line = word_w;
      ++lines;
    }
  }
  widest = std::max(widest, line);
  out.lines = lines;
  out.width = widest;
  out.height = static_cast<Emu>(lines) * line_h;
  return out;
}

RenderArtifact render_svg(const SceneGraph& scene) {
  if (!validate(scene).empty()) {
    throw Error("INVALID_SCENE", "render_svg: scene does not validate");
  }
  for (const auto& c : scene.connectors) {
    if (!c.src_port || !c.dst_port ||
        (c.kind == ConnectorKind::Elbow && c.waypoints.size() < 2)) {
      throw Error("UNROUTED_CONNECTOR", c.id,
                  "render_svg: connector '" + c.id + "' has no route; run route_all first");
    }
  }

  RenderArtifact art;
  SvgWriter svg;
  double cw = to_units(scene.canvas.width);
  double ch = to_units(scene.canvas.height);
  svg.out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cw) << "\" height=\""
          << num(ch) << "\" viewBox=\"0 0 " << num(cw) << " " << num(ch) << "\">\n";
  svg.open("rect");
  svg.attr("x", "0");
  svg.attr("y", "0");
  svg.attr("width", num(cw));
  svg.attr("height", num(ch));
  svg.attr("fill", "#FFFFFF");
  svg.close_empty();

  for (const auto& n : scene.nodes) {
    const EmuRect& b = n.bbox;
    art.element_extents[n.id] =
        Extent{to_units(b.x), to_units(b.y), to_units(b.w), to_units(b.h)};

    if (const auto* container = std::get_if<ContainerData>(&n.data)) {
      svg.open("rect");
      svg.attr("data-id", n.id);
      svg.attr("x", units(b.x));
      svg.attr("y", units(b.y));
      svg.attr("width", units(b.w));
      svg.attr("height", units(b.h));
      svg.attr("fill", "#" + container->fill.rgb);
      if (container->alpha < 1.0) svg.attr("fill-opacity", num(container->alpha));
      svg.attr("stroke", "#" + container->stroke.rgb);
      svg.close_empty();
      if (container->title) write_text(svg, *container->title, b, true);
    } else if (const auto* block = std::get_if<BlockData>(&n.data)) {
      switch (block->shape_kind) {
        case ShapeKind::Ellipse:
          svg.open("ellipse");
          svg.attr("data-id", n.id);
          svg.attr("cx", units(b.x + b.w / 2));
          svg.attr("cy", units(b.y + b.h / 2));
          svg.attr("rx", units(b.w / 2));
          svg.attr("ry", units(b.h / 2));
          break;
        case ShapeKind::Diamond:
          svg.open("polygon");
          svg.attr("data-id", n.id);
          svg.attr("points", units(b.x + b.w / 2) + "," + units(b.y) + " " + units(b.right()) +
                                 "," + units(b.y + b.h / 2) + " " + units(b.x + b.w / 2) + "," +
                                 units(b.bottom()) + " " + units(b.x) + "," +
                                 units(b.y + b.h / 2));
          break;
        case ShapeKind::FoldedCorner: {
          Emu fold = std::min(b.w, b.h) / 5;
          svg.open("path");
          svg.attr("data-id", n.id);
          svg.attr("d", "M" + units(b.x) + " " + units(b.y) + " H" + units(b.right()) + " V" +
                            units(b.bottom() - fold) + " L" + units(b.right() - fold) + " " +
                            units(b.bottom()) + " H" + units(b.x) + " Z");
          break;
        }
        default:
          svg.open("rect");
          svg.attr("data-id", n.id);
          svg.attr("x", units(b.x));
          svg.attr("y", units(b.y));
          svg.attr("width", units(b.w));
          svg.attr("height", units(b.h));
          if (block->shape_kind == ShapeKind::RoundedRect) {
            svg.attr("rx", units(std::min(b.w, b.h) / 8));
          }
      }
      svg.attr("fill", "#" + block->fill.rgb);
      svg.attr("stroke", "#" + block->stroke.rgb);
      svg.close_empty();
      write_text(svg, block->label, b, false);
    } else if (const auto* text_box = std::get_if<TextBoxData>(&n.data)) {
      write_text(svg, text_box->text, b, false);
    } else if (const auto* icon = std::get_if<IconData>(&n.data)) {
      // placeholder frame; the asset itself stays external to the snapshot
      svg.open("rect");
      svg.attr("data-id", n.id);
      svg.attr("x", units(b.x));
      svg.attr("y", units(b.y));
      svg.attr("width", units(b.w));
      svg.attr("height", units(b.h));
      svg.attr("fill", "#EEEEEE");
      svg.attr("stroke", "#999999");
      svg.close_empty();
      TextSpec label;
      label.content = icon->asset_id;
      label.font_size_pt = 8;
      write_text(svg, label, b, false);
    }
  }

  for (const auto& c : scene.connectors) {
    const Node* src = scene.find_node(c.src);
    const Node* dst = scene.find_node(c.dst);
    EmuPoint ps = router::port_point(src->bbox, *c.src_port);
    EmuPoint pd = router::port_point(dst->bbox, *c.dst_port);

    Emu min_x, min_y, max_x, max_y;
    if (c.kind == ConnectorKind::Elbow) {
      write_polyline(svg, c.waypoints, c);
      write_arrowhead(svg, c.waypoints.back(), c.waypoints[c.waypoints.size() - 2], c);
      min_x = max_x = c.waypoints.front().x;
      min_y = max_y = c.waypoints.front().y;
      for (const auto& p : c.waypoints) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
      }
    } else if (c.kind == ConnectorKind::Straight) {
      write_polyline(svg, {ps, pd}, c);
      write_arrowhead(svg, pd, ps, c);
      min_x = std::min(ps.x, pd.x);
      max_x = std::max(ps.x, pd.x);
      min_y = std::min(ps.y, pd.y);
      max_y = std::max(ps.y, pd.y);
    } else {
      // single cubic with control points pushed 40% of the port distance
      // along the port normals
      double dist = std::sqrt(std::pow(static_cast<double>(pd.x - ps.x), 2) +
                              std::pow(static_cast<double>(pd.y - ps.y), 2));
      auto outward = [](Port p) -> std::pair<int, int> {
        switch (p) {
          case Port::Top: return {0, -1};
          case Port::Bottom: return {0, 1};
          case Port::Left: return {-1, 0};
          case Port::Right: return {1, 0};
        }
        return {0, 0};
      };
      auto [sx, sy] = outward(*c.src_port);
      auto [dx2, dy2] = outward(*c.dst_port);
      EmuPoint c1{ps.x + static_cast<Emu>(std::llround(0.4 * dist * sx)),
                  ps.y + static_cast<Emu>(std::llround(0.4 * dist * sy))};
      EmuPoint c2{pd.x + static_cast<Emu>(std::llround(0.4 * dist * dx2)),
                  pd.y + static_cast<Emu>(std::llround(0.4 * dist * dy2))};
      svg.open("path");
      svg.attr("data-id", c.id);
      svg.attr("d", "M" + units(ps.x) + " " + units(ps.y) + " C" + units(c1.x) + " " +
                        units(c1.y) + ", " + units(c2.x) + " " + units(c2.y) + ", " +
                        units(pd.x) + " " + units(pd.y));
      svg.attr("fill", "none");
      svg.attr("stroke", "#" + c.color.rgb);
      svg.attr("stroke-width", num(c.line_width_pt * 96.0 / 72.0));
      svg.close_empty();
      write_arrowhead(svg, pd, c2, c);
      min_x = std::min({ps.x, pd.x, c1.x, c2.x});
      max_x = std::max({ps.x, pd.x, c1.x, c2.x});
      min_y = std::min({ps.y, pd.y, c1.y, c2.y});
      max_y = std::max({ps.y, pd.y, c1.y, c2.y});
    }
    art.element_extents[c.id] = Extent{to_units(min_x), to_units(min_y),
                                       to_units(max_x - min_x), to_units(max_y - min_y)};
  }

  svg.out << "</svg>\n";
  art.svg = svg.out.str();
  return art;
}

}  // namespace figforge::render
