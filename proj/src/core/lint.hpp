#pragma once

#include <string>
#include <vector>

#include "core/render.hpp"
#include "core/scene.hpp"

namespace figforge::lint {

enum class Category { Boundaries, Connectors, Text, Alignment, Style };
std::string to_string(Category c);

struct Issue {
  Category category;
  std::string description;
  std::string fix;
  std::vector<std::string> element_ids;
};

using IssueList = std::vector<Issue>;

struct LintConfig {
  Emu boundary_tolerance = 0;
  double dark_luminance = 0.35;   // linearized relative luminance ceiling for text
  double min_font_pt = 8.0;
  Emu alignment_snap = 45720;     // 0.05 in
  double line_width_min_pt = 1.5;
  double line_width_max_pt = 2.0;
  render::TextMetrics text_metrics;
};

// Deterministic diagnostics mirroring the four-dimension inspection
// checklist. All of them require a routed scene.
IssueList lint_boundaries(const SceneGraph& scene, const LintConfig& config = {});
IssueList lint_connectors(const SceneGraph& scene, const LintConfig& config = {});
IssueList lint_text(const SceneGraph& scene, const LintConfig& config = {});
IssueList lint_alignment(const SceneGraph& scene, const LintConfig& config = {});

// Concatenation in category order; deterministic.
IssueList run_lints(const SceneGraph& scene, const LintConfig& config = {});

// The exact line grammar "N. [CATEGORY] description -> fix".
std::string serialize_issue_list(const IssueList& issues);

// Tolerant of leading numbering and whitespace; unknown categories and
// lines without the "[CATEGORY]"/"->" structure throw with line numbers.
IssueList parse_issue_list(const std::string& text);

// Exact predicate: does the closed segment a-b intersect the open
// interior of rect? Integer/rational arithmetic throughout; reused by the
// router's crossing checks and re-checkable independently.
bool segment_intersects_rect_interior(EmuPoint a, EmuPoint b, const EmuRect& rect);

// Linearized relative luminance of an sRGB color, in [0, 1].
double relative_luminance(const Color& color);

}  // namespace figforge::lint
