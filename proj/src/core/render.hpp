#pragma once

#include <map>
#include <string>

#include "core/scene.hpp"

namespace figforge::render {

// Screen-space bbox in SVG user units (96 per inch).
struct Extent {
  double x = 0, y = 0, w = 0, h = 0;
};

struct RenderArtifact {
  std::string svg;
  std::map<std::string, Extent> element_extents;  // one entry per scene element
};

struct TextExtent {
  int lines = 0;
  Emu width = 0;
  Emu height = 0;
};

struct TextMetrics {
  // Heuristic glyph box; no font engine is in scope. Average glyph width
  // 0.52 x font size, line height 1.2 x font size.
  double char_width_factor = 0.52;
  double line_height_factor = 1.2;
};

// Deterministic SVG snapshot of a routed scene: draw order is z-order,
// then connectors; arrowheads are filled triangles scaled by size.
RenderArtifact render_svg(const SceneGraph& scene);

// Greedy word-wrap metric, monotone in content length.
TextExtent estimate_text_extent(const TextSpec& text, Emu box_width,
                                const TextMetrics& metrics = {});

}  // namespace figforge::render
