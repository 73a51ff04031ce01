#include "core/blueprint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace figforge {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Byte offsets of interesting document positions, recovered with a small
// string-aware scanner so semantic errors can point at real lines.
struct DocPositions {
  std::vector<size_t> op_offsets;     // offset of each element of "ops"
  std::vector<size_t> asset_offsets;  // offset of each element of "assets"
  std::map<std::string, size_t> top_keys;
};

DocPositions scan_positions(const std::string& text) {
  DocPositions pos;
  int depth = 0;                 // open containers enclosing the cursor
  std::string pending_key;       // last key seen at depth 1
  std::string active_array;      // "ops"/"assets" while inside that array
  int elem_depth = -1;           // depth of the active array's direct elements
  bool expecting_value = false;  // between a depth-1 key's ':' and its value

  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == '"') {
      size_t start = i++;
      while (i < n && text[i] != '"') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      if (depth == 1 && !expecting_value && i > start + 1) {
        pending_key = text.substr(start + 1, i - start - 1);
        pos.top_keys.emplace(pending_key, start);
      }
      ++i;  // closing quote
      continue;
    }
    switch (c) {
      case ':':
        if (depth == 1) expecting_value = true;
        break;
      case ',':
        if (depth == 1) expecting_value = false;
        break;
      case '[':
        if (depth == 1 && expecting_value &&
            (pending_key == "ops" || pending_key == "assets")) {
          active_array = pending_key;
          elem_depth = depth + 1;
        }
        ++depth;
        break;
      case '{':
        if (!active_array.empty() && depth == elem_depth) {
          (active_array == "ops" ? pos.op_offsets : pos.asset_offsets).push_back(i);
        }
        ++depth;
        break;
      case ']':
      case '}':
        --depth;
        if (!active_array.empty() && depth < elem_depth) {
          active_array.clear();
          elem_depth = -1;
        }
        if (depth == 1) expecting_value = false;
        break;
      default:
        break;
    }
    ++i;
  }
  return pos;
}

std::pair<int, int> line_col(const std::string& text, size_t offset) {
  int line = 1, col = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

struct Ctx {
  const std::string& text;
  const DocPositions& pos;
  ParseResult& result;

  void error_at(size_t offset, std::string code, std::string construct, std::string message) {
    auto [line, col] = line_col(text, offset);
    result.errors.push_back(ParseError{line, col, std::move(code), std::move(construct),
                                       std::move(message)});
  }
  size_t op_offset(size_t idx) const {
    return idx < pos.op_offsets.size() ? pos.op_offsets[idx] : 0;
  }
};

// Verifies parameter names and JSON value kinds against the frozen table.
bool check_params(Ctx& ctx, size_t offset, const std::string& skill, const json& op) {
  const auto& table = skill_param_table();
  auto it = table.find(skill);
  if (it == table.end()) {
    std::ostringstream msg;
    msg << "unknown skill '" << skill << "'; valid skills are";
    for (const auto& [name, _] : table) msg << " " << name;
    ctx.error_at(offset, "UNKNOWN_SKILL", skill, msg.str());
    return false;
  }
  bool ok = true;
  for (auto& [key, _] : op.items()) {
    if (key == "skill") continue;
    if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
      std::ostringstream msg;
      msg << "unknown parameter '" << key << "' for skill '" << skill
          << "'; valid parameters are";
      for (const auto& p : it->second) msg << " " << p;
      ctx.error_at(offset, "UNKNOWN_PARAM", key + "@" + skill, msg.str());
      ok = false;
    }
  }
  return ok;
}

class ParamReader {
 public:
  ParamReader(Ctx& ctx, size_t offset, const std::string& skill, const json& op)
      : ctx_(ctx), offset_(offset), skill_(skill), op_(op) {}

  bool failed() const { return failed_; }

  double number(const std::string& key, bool required, double fallback = 0.0) {
    const json* v = get(key, required);
    if (!v) return fallback;
    if (!v->is_number()) {
      type_error(key, "a number");
      return fallback;
    }
    if (key == "x" || key == "y" || key == "w" || key == "h") warn_precision(key, v->get<double>());
    return v->get<double>();
  }

  std::string string(const std::string& key, bool required, const std::string& fallback = "") {
    const json* v = get(key, required);
    if (!v) return fallback;
    if (!v->is_string()) {
      type_error(key, "a string");
      return fallback;
    }
    return v->get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key, false);
    if (!v) return fallback;
    if (!v->is_boolean()) {
      type_error(key, "a boolean");
      return fallback;
    }
    return v->get<bool>();
  }

  bool has(const std::string& key) const { return op_.contains(key); }

 private:
  const json* get(const std::string& key, bool required) {
    auto it = op_.find(key);
    if (it == op_.end()) {
      if (required) {
        ctx_.error_at(offset_, "MISSING_PARAM", key + "@" + skill_,
                      "skill '" + skill_ + "' requires parameter '" + key + "'");
        failed_ = true;
      }
      return nullptr;
    }
    return &*it;
  }

  void type_error(const std::string& key, const std::string& want) {
    ctx_.error_at(offset_, "BAD_PARAM_TYPE", key + "@" + skill_,
                  "parameter '" + key + "' of skill '" + skill_ + "' must be " + want);
    failed_ = true;
  }

  // Inch inputs are documented to carry at most 4 fractional digits; finer
  // values are rounded half-up to EMU with a recorded warning.
  void warn_precision(const std::string& key, double v) {
    double scaled = v * 10000.0;
    if (std::abs(scaled - std::llround(scaled)) > 1e-6 * std::max(1.0, std::abs(scaled))) {
      auto [line, col] = line_col(ctx_.text, offset_);
      ctx_.result.warnings.push_back(ParseWarning{
          line, col,
          "parameter '" + key + "' of '" + skill_ +
              "' has more than 4 decimal places; value rounded half-up to EMU"});
    }
  }

  Ctx& ctx_;
  size_t offset_;
  const std::string& skill_;
  const json& op_;
  bool failed_ = false;
};

Color read_color(Ctx& ctx, size_t offset, const std::string& skill, ParamReader& r,
                 const std::string& key, const char* fallback, bool& ok) {
  std::string raw = r.string(key, false, fallback);
  try {
    return make_color(raw);
  } catch (const Error& e) {
    ctx.error_at(offset, e.code(), key + "@" + skill, e.what());
    ok = false;
    return Color{};
  }
}

Align read_align(Ctx& ctx, size_t offset, const std::string& skill, ParamReader& r, bool& ok) {
  std::string raw = r.string("align", false, "center");
  if (raw == "left") return Align::Left;
  if (raw == "center") return Align::Center;
  if (raw == "right") return Align::Right;
  ctx.error_at(offset, "BAD_ALIGN", raw + "@" + skill,
               "align must be one of left center right, got '" + raw + "'");
  ok = false;
  return Align::Center;
}

void run_op(Ctx& ctx, SceneGraph& scene, size_t idx, const json& op,
            std::map<std::string, size_t>& id_to_op) {
  size_t offset = ctx.op_offset(idx);
  if (!op.is_object()) {
    ctx.error_at(offset, "BAD_OP", "ops[" + std::to_string(idx) + "]",
                 "each entry of 'ops' must be an object");
    return;
  }
  auto skill_it = op.find("skill");
  if (skill_it == op.end() || !skill_it->is_string()) {
    ctx.error_at(offset, "MISSING_PARAM", "skill",
                 "op " + std::to_string(idx) + " is missing the 'skill' name");
    return;
  }
  const std::string skill = skill_it->get<std::string>();
  if (!check_params(ctx, offset, skill, op)) return;

  ParamReader r(ctx, offset, skill, op);
  bool ok = true;
  try {
    std::string new_id;
    if (skill == "add_container") {
      ContainerParams p;
      p.x = r.number("x", true);
      p.y = r.number("y", true);
      p.w = r.number("w", true);
      p.h = r.number("h", true);
      if (r.has("title")) p.title = r.string("title", false);
      p.fill = read_color(ctx, offset, skill, r, "fill", "F5F5F5", ok);
      p.stroke = read_color(ctx, offset, skill, r, "stroke", "CCCCCC", ok);
      p.alpha = r.number("alpha", false, 1.0);
      p.title_font_size_pt = r.number("font_size", false, 14.0);
      if (r.has("id")) p.id = r.string("id", false);
      if (r.failed() || !ok) return;
      new_id = add_container(scene, p);
    } else if (skill == "add_block") {
      BlockParams p;
      p.x = r.number("x", true);
      p.y = r.number("y", true);
      p.w = r.number("w", true);
      p.h = r.number("h", true);
      p.text = r.string("text", true);
      std::string kind = r.string("shape_kind", false, "rect");
      p.fill = read_color(ctx, offset, skill, r, "fill", "FFFFFF", ok);
      p.stroke = read_color(ctx, offset, skill, r, "stroke", "000000", ok);
      p.font_size_pt = r.number("font_size", false, 14.0);
      p.bold = r.boolean("bold", false);
      if (r.has("id")) p.id = r.string("id", false);
      if (r.failed() || !ok) return;
      p.shape_kind = shape_kind_from_string(kind);
      new_id = add_block(scene, p);
    } else if (skill == "add_text") {
      TextParams p;
      p.x = r.number("x", true);
      p.y = r.number("y", true);
      p.w = r.number("w", true);
      p.h = r.number("h", true);
      p.text.content = r.string("text", true);
      p.text.font_size_pt = r.number("font_size", false, 14.0);
      p.text.color = read_color(ctx, offset, skill, r, "color", "000000", ok);
      p.text.align = read_align(ctx, offset, skill, r, ok);
      p.text.bold = r.boolean("bold", false);
      if (r.has("id")) p.id = r.string("id", false);
      if (r.failed() || !ok) return;
      new_id = add_text(scene, p);
    } else if (skill == "add_icon") {
      IconParams p;
      p.asset_id = r.string("asset", true);
      p.x = r.number("x", true);
      p.y = r.number("y", true);
      p.w = r.number("w", true);
      p.h = r.number("h", true);
      if (r.has("id")) p.id = r.string("id", false);
      if (r.failed() || !ok) return;
      new_id = add_icon(scene, p);
    } else if (skill == "add_connector") {
      ConnectorParams p;
      p.src = r.string("src", true);
      p.dst = r.string("dst", true);
      std::string kind = r.string("kind", true);
      std::string arrow = r.string("arrow_head", false, "medium");
      p.line_width_pt = r.number("line_width", false, 1.75);
      p.color = read_color(ctx, offset, skill, r, "color", "000000", ok);
      if (r.has("id")) p.id = r.string("id", false);
      if (r.failed() || !ok) return;
      p.kind = connector_kind_from_string(kind);
      p.arrow_head = arrow_head_from_string(arrow);
      new_id = add_connector(scene, p);
    }
    if (!new_id.empty()) id_to_op[new_id] = offset;
  } catch (const Error& e) {
    ctx.error_at(offset, e.code(), e.construct(), e.what());
  }
}

}  // namespace

std::string ParseError::to_string() const {
  std::ostringstream os;
  os << "line " << line << ", col " << col << ": " << code << ": " << message;
  return os.str();
}

const std::map<std::string, std::vector<std::string>>& skill_param_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"add_container", {"x", "y", "w", "h", "title", "fill", "stroke", "alpha", "font_size", "id"}},
      {"add_block",
       {"x", "y", "w", "h", "text", "shape_kind", "fill", "stroke", "font_size", "bold", "id"}},
      {"add_text", {"x", "y", "w", "h", "text", "font_size", "color", "align", "bold", "id"}},
      {"add_icon", {"asset", "x", "y", "w", "h", "id"}},
      {"add_connector", {"src", "dst", "kind", "arrow_head", "line_width", "color", "id"}},
  };
  return table;
}

ParseResult parse_blueprint(const std::string& text,
                            const std::map<std::string, AssetRef>& extra_assets) {
  ParseResult result;
  DocPositions pos = scan_positions(text);
  Ctx ctx{text, pos, result};

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    ctx.error_at(offset, "SYNTAX_ERROR", "", e.what());
    return result;
  }
  if (!doc.is_object()) {
    ctx.error_at(0, "BAD_DOCUMENT", "", "blueprint must be a JSON object");
    return result;
  }

  static const std::vector<std::string> top_fields = {"canvas", "assets", "ops"};
  for (auto& [key, _] : doc.items()) {
    if (std::find(top_fields.begin(), top_fields.end(), key) == top_fields.end()) {
      size_t off = pos.top_keys.count(key) ? pos.top_keys.at(key) : 0;
      ctx.error_at(off, "UNKNOWN_FIELD", key,
                   "unknown top-level field '" + key + "'; valid fields are canvas assets ops");
    }
  }

  SceneGraph& scene = result.scene;
  for (const auto& [id, ref] : extra_assets) scene.assets[id] = ref;

  if (doc.contains("canvas")) {
    const json& cv = doc["canvas"];
    size_t off = pos.top_keys.count("canvas") ? pos.top_keys.at("canvas") : 0;
    bool has_in = cv.contains("w_in") || cv.contains("h_in");
    bool has_cm = cv.contains("w_cm") || cv.contains("h_cm");
    if (!cv.is_object() || (has_in && has_cm) ||
        (has_in && !(cv.contains("w_in") && cv.contains("h_in"))) ||
        (has_cm && !(cv.contains("w_cm") && cv.contains("h_cm"))) || (!has_in && !has_cm)) {
      ctx.error_at(off, "BAD_CANVAS", "canvas",
                   "canvas must carry exactly the pair {w_in,h_in} or {w_cm,h_cm}");
    } else {
      for (auto& [key, v] : cv.items()) {
        if (key != "w_in" && key != "h_in" && key != "w_cm" && key != "h_cm") {
          ctx.error_at(off, "UNKNOWN_PARAM", key + "@canvas",
                       "unknown canvas field '" + key + "'");
        } else if (!v.is_number()) {
          ctx.error_at(off, "BAD_PARAM_TYPE", key + "@canvas",
                       "canvas field '" + key + "' must be a number");
        }
      }
      if (result.errors.empty()) {
        if (has_in) {
          scene.canvas.width = emu_from_inches(cv["w_in"].get<double>());
          scene.canvas.height = emu_from_inches(cv["h_in"].get<double>());
        } else {
          scene.canvas.width = emu_from_cm(cv["w_cm"].get<double>());
          scene.canvas.height = emu_from_cm(cv["h_cm"].get<double>());
        }
        if (scene.canvas.width <= 0 || scene.canvas.height <= 0) {
          ctx.error_at(off, "BAD_CANVAS", "canvas", "canvas dimensions must be positive");
        }
      }
    }
  }

  if (doc.contains("assets")) {
    const json& assets = doc["assets"];
    size_t base_off = pos.top_keys.count("assets") ? pos.top_keys.at("assets") : 0;
    if (!assets.is_array()) {
      ctx.error_at(base_off, "BAD_PARAM_TYPE", "assets", "'assets' must be an array");
    } else {
      for (size_t i = 0; i < assets.size(); ++i) {
        size_t off = i < pos.asset_offsets.size() ? pos.asset_offsets[i] : base_off;
        const json& a = assets[i];
        if (!a.is_object() || !a.contains("id") || !a.contains("path") ||
            !a["id"].is_string() || !a["path"].is_string()) {
          ctx.error_at(off, "BAD_ASSET", "assets[" + std::to_string(i) + "]",
                       "asset entries must be {id: string, path: string}");
          continue;
        }
        for (auto& [key, _] : a.items()) {
          if (key != "id" && key != "path") {
            ctx.error_at(off, "UNKNOWN_PARAM", key + "@assets",
                         "unknown asset field '" + key + "'");
          }
        }
        std::string id = a["id"].get<std::string>();
        if (scene.assets.count(id)) {
          ctx.error_at(off, "DUPLICATE_ID", id + "@assets",
                       "asset id '" + id + "' declared twice");
          continue;
        }
        scene.assets[id] = AssetRef{a["path"].get<std::string>(), {}};
      }
    }
  }

  std::map<std::string, size_t> id_to_op;
  if (doc.contains("ops")) {
    const json& ops = doc["ops"];
    if (!ops.is_array()) {
      size_t off = pos.top_keys.count("ops") ? pos.top_keys.at("ops") : 0;
      ctx.error_at(off, "BAD_PARAM_TYPE", "ops", "'ops' must be an array");
    } else {
      for (size_t i = 0; i < ops.size(); ++i) run_op(ctx, scene, i, ops[i], id_to_op);
    }
  }

  if (result.errors.empty()) {
    for (const auto& v : validate(scene)) {
      size_t off = id_to_op.count(v.element_id) ? id_to_op.at(v.element_id) : 0;
      ctx.error_at(off, v.code, v.construct, v.message);
    }
  }
  return result;
}

std::string serialize_blueprint(const SceneGraph& scene) {
  if (!validate(scene).empty()) {
    throw Error("INVALID_SCENE", "serialize_blueprint requires a scene that validates");
  }

  ordered_json doc;
  doc["canvas"] = {{"w_in", inches_from_emu(scene.canvas.width)},
                   {"h_in", inches_from_emu(scene.canvas.height)}};

  if (!scene.assets.empty()) {
    ordered_json assets = ordered_json::array();
    for (const auto& [id, ref] : scene.assets) {
      assets.push_back({{"id", id}, {"path", ref.path}});
    }
    doc["assets"] = std::move(assets);
  }

  ordered_json ops = ordered_json::array();
  auto text_fields = [](ordered_json& op, const TextSpec& t) {
    op["font_size"] = t.font_size_pt;
    op["color"] = t.color.rgb;
    op["align"] = t.align == Align::Left ? "left" : t.align == Align::Right ? "right" : "center";
    op["bold"] = t.bold;
  };
  for (const auto& n : scene.nodes) {
    ordered_json op;
    const EmuRect& b = n.bbox;
    if (const auto* c = std::get_if<ContainerData>(&n.data)) {
      op["skill"] = "add_container";
      op["x"] = inches_from_emu(b.x);
      op["y"] = inches_from_emu(b.y);
      op["w"] = inches_from_emu(b.w);
      op["h"] = inches_from_emu(b.h);
      if (c->title) {
        op["title"] = c->title->content;
        op["font_size"] = c->title->font_size_pt;
      }
      op["fill"] = c->fill.rgb;
      op["stroke"] = c->stroke.rgb;
      op["alpha"] = c->alpha;
    } else if (const auto* blk = std::get_if<BlockData>(&n.data)) {
      op["skill"] = "add_block";
      op["x"] = inches_from_emu(b.x);
      op["y"] = inches_from_emu(b.y);
      op["w"] = inches_from_emu(b.w);
      op["h"] = inches_from_emu(b.h);
      op["text"] = blk->label.content;
      op["shape_kind"] = to_string(blk->shape_kind);
      op["fill"] = blk->fill.rgb;
      op["stroke"] = blk->stroke.rgb;
      op["font_size"] = blk->label.font_size_pt;
      op["bold"] = blk->label.bold;
    } else if (const auto* txt = std::get_if<TextBoxData>(&n.data)) {
      op["skill"] = "add_text";
      op["x"] = inches_from_emu(b.x);
      op["y"] = inches_from_emu(b.y);
      op["w"] = inches_from_emu(b.w);
      op["h"] = inches_from_emu(b.h);
      op["text"] = txt->text.content;
      text_fields(op, txt->text);
    } else if (const auto* icon = std::get_if<IconData>(&n.data)) {
      op["skill"] = "add_icon";
      op["asset"] = icon->asset_id;
      op["x"] = inches_from_emu(b.x);
      op["y"] = inches_from_emu(b.y);
      op["w"] = inches_from_emu(b.w);
      op["h"] = inches_from_emu(b.h);
    }
    op["id"] = n.id;
    ops.push_back(std::move(op));
  }
  for (const auto& c : scene.connectors) {
    ordered_json op;
    op["skill"] = "add_connector";
    op["src"] = c.src;
    op["dst"] = c.dst;
    op["kind"] = to_string(c.kind);
    op["arrow_head"] = to_string(c.arrow_head);
    op["line_width"] = c.line_width_pt;
    op["color"] = c.color.rgb;
    op["id"] = c.id;
    ops.push_back(std::move(op));
  }
  doc["ops"] = std::move(ops);
  return doc.dump(2) + "\n";
}

}  // namespace figforge
