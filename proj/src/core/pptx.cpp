#include "core/pptx.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/xml_canon.hpp"

namespace figforge::pptx {

namespace {

constexpr const char* kNsA = "http://schemas.openxmlformats.org/drawingml/2006/main";
constexpr const char* kNsR = "http://schemas.openxmlformats.org/officeDocument/2006/relationships";
constexpr const char* kNsP = "http://schemas.openxmlformats.org/presentationml/2006/main";

constexpr const char* kRelOfficeDocument =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/officeDocument";
constexpr const char* kRelSlideMaster =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/slideMaster";
constexpr const char* kRelSlide =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/slide";
constexpr const char* kRelSlideLayout =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/slideLayout";
constexpr const char* kRelTheme =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/theme";
constexpr const char* kRelImage =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/image";

// Constant stub parts; golden copies live under tests/golden and the test
// suite asserts these strings never drift.
constexpr const char* kDocRels =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
    "<Relationship Id=\"rId1\" "
    "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/officeDocument\" "
    "Target=\"ppt/presentation.xml\"/></Relationships>";

constexpr const char* kPresentationRels =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
    "<Relationship Id=\"rId1\" "
    "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/slideMaster\" "
    "Target=\"slideMasters/slideMaster1.xml\"/>"
    "<Relationship Id=\"rId2\" "
    "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/slide\" "
    "Target=\"slides/slide1.xml\"/></Relationships>";

constexpr const char* kMasterRels =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
    "<Relationship Id=\"rId1\" "
    "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/slideLayout\" "
    "Target=\"../slideLayouts/slideLayout1.xml\"/>"
    "<Relationship Id=\"rId2\" "
    "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/theme\" "
    "Target=\"../theme/theme1.xml\"/></Relationships>";

constexpr const char* kLayoutRels =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
    "<Relationship Id=\"rId1\" "
    "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/slideMaster\" "
    "Target=\"../slideMasters/slideMaster1.xml\"/></Relationships>";

constexpr const char* kSlideMaster =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<p:sldMaster xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\" "
    "xmlns:r=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships\" "
    "xmlns:p=\"http://schemas.openxmlformats.org/presentationml/2006/main\">"
    "<p:cSld><p:bg><p:bgPr><a:solidFill><a:srgbClr val=\"FFFFFF\"/></a:solidFill>"
    "<a:effectLst/></p:bgPr></p:bg>"
    "<p:spTree><p:nvGrpSpPr><p:cNvPr id=\"1\" name=\"\"/><p:cNvGrpSpPr/><p:nvPr/></p:nvGrpSpPr>"
    "<p:grpSpPr/></p:spTree></p:cSld>"
    "<p:clrMap bg1=\"lt1\" tx1=\"dk1\" bg2=\"lt2\" tx2=\"dk2\" accent1=\"accent1\" "
    "accent2=\"accent2\" accent3=\"accent3\" accent4=\"accent4\" accent5=\"accent5\" "
    "accent6=\"accent6\" hlink=\"hlink\" folHlink=\"folHlink\"/>"
    "<p:sldLayoutIdLst><p:sldLayoutId id=\"2147483649\" r:id=\"rId1\"/></p:sldLayoutIdLst>"
    "</p:sldMaster>";

constexpr const char* kSlideLayout =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<p:sldLayout xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\" "
    "xmlns:r=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships\" "
    "xmlns:p=\"http://schemas.openxmlformats.org/presentationml/2006/main\">"
    "<p:cSld><p:spTree><p:nvGrpSpPr><p:cNvPr id=\"1\" name=\"\"/><p:cNvGrpSpPr/><p:nvPr/>"
    "</p:nvGrpSpPr><p:grpSpPr/></p:spTree></p:cSld>"
    "<p:clrMapOvr><a:masterClrMapping/></p:clrMapOvr></p:sldLayout>";

constexpr const char* kTheme =
    "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
    "<a:theme xmlns:a=\"http://schemas.openxmlformats.org/drawingml/2006/main\" "
    "name=\"figforge\"><a:themeElements>"
    "<a:clrScheme name=\"figforge\">"
    "<a:dk1><a:sysClr val=\"windowText\" lastClr=\"000000\"/></a:dk1>"
    "<a:lt1><a:sysClr val=\"window\" lastClr=\"FFFFFF\"/></a:lt1>"
    "<a:dk2><a:srgbClr val=\"44546A\"/></a:dk2>"
    "<a:lt2><a:srgbClr val=\"E7E6E6\"/></a:lt2>"
    "<a:accent1><a:srgbClr val=\"4472C4\"/></a:accent1>"
    "<a:accent2><a:srgbClr val=\"ED7D31\"/></a:accent2>"
    "<a:accent3><a:srgbClr val=\"A5A5A5\"/></a:accent3>"
    "<a:accent4><a:srgbClr val=\"FFC000\"/></a:accent4>"
    "<a:accent5><a:srgbClr val=\"5B9BD5\"/></a:accent5>"
    "<a:accent6><a:srgbClr val=\"70AD47\"/></a:accent6>"
    "<a:hlink><a:srgbClr val=\"0563C1\"/></a:hlink>"
    "<a:folHlink><a:srgbClr val=\"954F72\"/></a:folHlink>"
    "</a:clrScheme>"
    "<a:fontScheme name=\"figforge\">"
    "<a:majorFont><a:latin typeface=\"Calibri\"/><a:ea typeface=\"\"/><a:cs typeface=\"\"/>"
    "</a:majorFont>"
    "<a:minorFont><a:latin typeface=\"Calibri\"/><a:ea typeface=\"\"/><a:cs typeface=\"\"/>"
    "</a:minorFont></a:fontScheme>"
    "<a:fmtScheme name=\"figforge\">"
    "<a:fillStyleLst><a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill>"
    "<a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill>"
    "<a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill></a:fillStyleLst>"
    "<a:lnStyleLst><a:ln w=\"6350\"><a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill></a:ln>"
    "<a:ln w=\"12700\"><a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill></a:ln>"
    "<a:ln w=\"19050\"><a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill></a:ln>"
    "</a:lnStyleLst>"
    "<a:effectStyleLst><a:effectStyle><a:effectLst/></a:effectStyle>"
    "<a:effectStyle><a:effectLst/></a:effectStyle>"
    "<a:effectStyle><a:effectLst/></a:effectStyle></a:effectStyleLst>"
    "<a:bgFillStyleLst><a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill>"
    "<a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill>"
    "<a:solidFill><a:schemeClr val=\"phClr\"/></a:solidFill></a:bgFillStyleLst>"
    "</a:fmtScheme></a:themeElements></a:theme>";

std::string emu_str(Emu v) { return std::to_string(v); }

std::string preset_for(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rect: return "rect";
    case ShapeKind::RoundedRect: return "roundRect";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Diamond: return "diamond";
    case ShapeKind::FoldedCorner: return "foldedCorner";
  }
  return "rect";
}

bool shape_kind_for_preset(const std::string& prst, ShapeKind& out) {
  if (prst == "rect") out = ShapeKind::Rect;
  else if (prst == "roundRect") out = ShapeKind::RoundedRect;
  else if (prst == "ellipse") out = ShapeKind::Ellipse;
  else if (prst == "diamond") out = ShapeKind::Diamond;
  else if (prst == "foldedCorner") out = ShapeKind::FoldedCorner;
  else return false;
  return true;
}

std::string arrow_attr(ArrowHead a) {
  switch (a) {
    case ArrowHead::Small: return "sm";
    case ArrowHead::Medium: return "med";
    case ArrowHead::Large: return "lg";
    case ArrowHead::None: return "";
  }
  return "med";
}

std::string align_attr(Align a) {
  switch (a) {
    case Align::Left: return "l";
    case Align::Center: return "ctr";
    case Align::Right: return "r";
  }
  return "ctr";
}

bool align_from_attr(const std::string& s, Align& out) {
  if (s == "l") out = Align::Left;
  else if (s == "ctr") out = Align::Center;
  else if (s == "r") out = Align::Right;
  else return false;
  return true;
}

void add_xfrm(xml::XmlNode& sp_pr, const EmuRect& r, bool flip_h = false, bool flip_v = false) {
  auto& xfrm = sp_pr.add_child("a:xfrm");
  if (flip_h) xfrm.set_attr("flipH", "1");
  if (flip_v) xfrm.set_attr("flipV", "1");
  auto& off = xfrm.add_child("a:off");
  off.set_attr("x", emu_str(r.x));
  off.set_attr("y", emu_str(r.y));
  auto& ext = xfrm.add_child("a:ext");
  ext.set_attr("cx", emu_str(r.w));
  ext.set_attr("cy", emu_str(r.h));
}

void add_solid_fill(xml::XmlNode& parent, const Color& color, double alpha = 1.0) {
  auto& fill = parent.add_child("a:solidFill");
  auto& clr = fill.add_child("a:srgbClr");
  clr.set_attr("val", color.rgb);
  int pct = alpha_pct_thousandths(alpha);
  if (pct < 100000) {
    auto& a = clr.add_child("a:alpha");
    a.set_attr("val", std::to_string(pct));
  }
}

void add_line(xml::XmlNode& sp_pr, const Color& color, Emu width,
              ArrowHead tail = ArrowHead::None, bool with_tail = false) {
  auto& ln = sp_pr.add_child("a:ln");
  ln.set_attr("w", emu_str(width));
  add_solid_fill(ln, color);
  if (with_tail) {
    auto& tail_end = ln.add_child("a:tailEnd");
    if (tail == ArrowHead::None) {
      tail_end.set_attr("type", "none");
    } else {
      tail_end.set_attr("type", "triangle");
      tail_end.set_attr("w", arrow_attr(tail));
      tail_end.set_attr("len", arrow_attr(tail));
    }
  }
}

void add_text_body(xml::XmlNode& sp, const TextSpec* text, const char* anchor) {
  auto& body = sp.add_child("p:txBody");
  auto& body_pr = body.add_child("a:bodyPr");
  body_pr.set_attr("anchor", anchor);
  body.add_child("a:lstStyle");
  auto& p = body.add_child("a:p");
  if (!text || text->content.empty()) return;
  auto& p_pr = p.add_child("a:pPr");
  p_pr.set_attr("algn", align_attr(text->align));
  auto& r = p.add_child("a:r");
  auto& r_pr = r.add_child("a:rPr");
  r_pr.set_attr("sz", std::to_string(std::llround(text->font_size_pt * 100.0)));
  if (text->bold) r_pr.set_attr("b", "1");
  add_solid_fill(r_pr, text->color);
  r.add_child("a:t").add_text(text->content);
}

xml::XmlNode make_nv_pr(const char* tag, int numeric_id, const std::string& name,
                        const std::string& descr = "") {
  xml::XmlNode nv;
  nv.name = tag;
  auto& c_nv = nv.add_child("p:cNvPr");
  c_nv.set_attr("id", std::to_string(numeric_id));
  c_nv.set_attr("name", name);
  if (!descr.empty()) c_nv.set_attr("descr", descr);
  return nv;
}

std::vector<std::uint8_t> str_bytes(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

std::vector<std::uint8_t> load_asset_bytes(const AssetRef& ref, const std::string& asset_id) {
  if (!ref.bytes.empty()) return ref.bytes;
  std::ifstream f(ref.path, std::ios::binary);
  if (!f) {
    throw Error("UNRESOLVED_ASSET", asset_id,
                "asset '" + asset_id + "' could not be read from '" + ref.path + "'");
  }
  std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(f)),
                                std::istreambuf_iterator<char>());
  return out;
}

struct RelEntry {
  std::string id;
  std::string type;
  std::string target;
  bool external = false;
};

std::vector<RelEntry> parse_rels(const xml::XmlNode& root) {
  std::vector<RelEntry> out;
  for (const auto& rel : root.children) {
    if (rel.name != "Relationship") continue;
    RelEntry e;
    if (const auto* v = rel.attr("Id")) e.id = *v;
    if (const auto* v = rel.attr("Type")) e.type = *v;
    if (const auto* v = rel.attr("Target")) e.target = *v;
    if (const auto* v = rel.attr("TargetMode")) e.external = *v == "External";
    out.push_back(std::move(e));
  }
  return out;
}

std::string dirname_of(const std::string& part) {
  size_t slash = part.rfind('/');
  return slash == std::string::npos ? "" : part.substr(0, slash);
}

std::string resolve_target(const std::string& base_dir, const std::string& target) {
  std::string path = target;
  if (!path.empty() && path[0] == '/') {
    path.erase(0, 1);
  } else if (!base_dir.empty()) {
    path = base_dir + "/" + path;
  }
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string item;
  while (std::getline(ss, item, '/')) {
    if (item.empty() || item == ".") continue;
    if (item == "..") {
      if (!parts.empty()) parts.pop_back();
      continue;
    }
    parts.push_back(item);
  }
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '/';
    out += parts[i];
  }
  return out;
}

std::string rels_part_for(const std::string& part) {
  std::string dir = dirname_of(part);
  std::string base = part.substr(dir.empty() ? 0 : dir.size() + 1);
  return dir.empty() ? "_rels/" + base + ".rels" : dir + "/_rels/" + base + ".rels";
}

// Numeric shape id -> element name, for resolving connection references.
void collect_numeric_ids(const xml::XmlNode& sp_tree, std::map<int, std::string>& out) {
  for (const auto& el : sp_tree.children) {
    if (!el.is_element()) continue;
    for (const char* nv : {"p:nvSpPr", "p:nvCxnSpPr", "p:nvPicPr", "p:nvGrpSpPr",
                           "p:nvGraphicFramePr"}) {
      if (const auto* nvp = el.child(nv)) {
        if (const auto* c_nv = nvp->child("p:cNvPr")) {
          const auto* id = c_nv->attr("id");
          const auto* name = c_nv->attr("name");
          if (id && name) {
            try {
              out[std::stoi(*id)] = *name;
            } catch (...) {
            }
          }
        }
      }
    }
  }
}

}  // namespace

int connection_index(Port p) {
  switch (p) {
    case Port::Top: return 0;
    case Port::Left: return 1;
    case Port::Bottom: return 2;
    case Port::Right: return 3;
  }
  return 0;
}

Port port_from_connection_index(int idx) {
  switch (idx) {
    case 0: return Port::Top;
    case 1: return Port::Left;
    case 2: return Port::Bottom;
    case 3: return Port::Right;
  }
  throw Error("BAD_CONNECTION_INDEX", "connection index must be 0..3");
}

std::vector<std::uint8_t> emit(const SceneGraph& scene) {
  auto violations = validate(scene);
  if (!violations.empty()) {
    throw Error("INVALID_SCENE",
                "emit: scene does not validate: " + violations.front().message);
  }
  for (const auto& c : scene.connectors) {
    if (!c.src_port || !c.dst_port ||
        (c.kind == ConnectorKind::Elbow && c.waypoints.size() < 2)) {
      throw Error("UNROUTED_CONNECTOR", c.id,
                  "emit: connector '" + c.id + "' has no route; run route_all first");
    }
  }

  // Assets referenced by icons, numbered in z-order of first use.
  std::vector<std::string> media_order;
  std::map<std::string, int> media_index;  // asset id -> image number (1-based)
  std::map<std::string, std::vector<std::uint8_t>> media_bytes;
  for (const auto& n : scene.nodes) {
    const auto* icon = std::get_if<IconData>(&n.data);
    if (!icon || media_index.count(icon->asset_id)) continue;
    media_index[icon->asset_id] = static_cast<int>(media_order.size()) + 1;
    media_order.push_back(icon->asset_id);
    media_bytes[icon->asset_id] =
        load_asset_bytes(scene.assets.at(icon->asset_id), icon->asset_id);
  }

  // numeric ids: 1 is the group root, nodes follow in z-order, then connectors
  std::map<std::string, int> numeric_id;
  int next_id = 2;
  for (const auto& n : scene.nodes) numeric_id[n.id] = next_id++;
  for (const auto& c : scene.connectors) numeric_id[c.id] = next_id++;

  xml::XmlNode sld;
  sld.name = "p:sld";
  sld.set_attr("xmlns:a", kNsA);
  sld.set_attr("xmlns:r", kNsR);
  sld.set_attr("xmlns:p", kNsP);
  auto& c_sld = sld.add_child("p:cSld");
  auto& sp_tree = c_sld.add_child("p:spTree");
  {
    auto& nv = sp_tree.add_child("p:nvGrpSpPr");
    auto& c_nv = nv.add_child("p:cNvPr");
    c_nv.set_attr("id", "1");
    c_nv.set_attr("name", "");
    nv.add_child("p:cNvGrpSpPr");
    nv.add_child("p:nvPr");
    auto& grp = sp_tree.add_child("p:grpSpPr");
    auto& xfrm = grp.add_child("a:xfrm");
    for (const char* tag : {"a:off", "a:chOff"}) {
      auto& o = xfrm.add_child(tag);
      o.set_attr("x", "0");
      o.set_attr("y", "0");
    }
    for (const char* tag : {"a:ext", "a:chExt"}) {
      auto& e = xfrm.add_child(tag);
      e.set_attr("cx", "0");
      e.set_attr("cy", "0");
    }
  }

  for (const auto& n : scene.nodes) {
    if (const auto* icon = std::get_if<IconData>(&n.data)) {
      auto& pic = sp_tree.add_child("p:pic");
      auto nv = make_nv_pr("p:nvPicPr", numeric_id[n.id], n.id, icon->asset_id);
      nv.add_child("p:cNvPicPr");
      nv.add_child("p:nvPr");
      pic.children.push_back(std::move(nv));
      auto& blip_fill = pic.add_child("p:blipFill");
      auto& blip = blip_fill.add_child("a:blip");
      blip.set_attr("r:embed", "rId" + std::to_string(1 + media_index[icon->asset_id]));
      blip_fill.add_child("a:stretch").add_child("a:fillRect");
      auto& sp_pr = pic.add_child("p:spPr");
      add_xfrm(sp_pr, n.bbox);
      auto& geom = sp_pr.add_child("a:prstGeom");
      geom.set_attr("prst", "rect");
      geom.add_child("a:avLst");
      continue;
    }

    auto& sp = sp_tree.add_child("p:sp");
    auto nv = make_nv_pr("p:nvSpPr", numeric_id[n.id], n.id);
    auto& c_nv_sp = nv.add_child("p:cNvSpPr");
    if (std::holds_alternative<TextBoxData>(n.data)) c_nv_sp.set_attr("txBox", "1");
    nv.add_child("p:nvPr");
    sp.children.push_back(std::move(nv));

    auto& sp_pr = sp.add_child("p:spPr");
    add_xfrm(sp_pr, n.bbox);

    if (const auto* container = std::get_if<ContainerData>(&n.data)) {
      auto& geom = sp_pr.add_child("a:prstGeom");
      geom.set_attr("prst", "rect");
      geom.add_child("a:avLst");
      add_solid_fill(sp_pr, container->fill, container->alpha);
      add_line(sp_pr, container->stroke, kEmuPerPoint);
      add_text_body(sp, container->title ? &*container->title : nullptr, "t");
    } else if (const auto* block = std::get_if<BlockData>(&n.data)) {
      auto& geom = sp_pr.add_child("a:prstGeom");
      geom.set_attr("prst", preset_for(block->shape_kind));
      geom.add_child("a:avLst");
      add_solid_fill(sp_pr, block->fill);
      add_line(sp_pr, block->stroke, kEmuPerPoint);
      add_text_body(sp, &block->label, "ctr");
    } else if (const auto* text_box = std::get_if<TextBoxData>(&n.data)) {
      auto& geom = sp_pr.add_child("a:prstGeom");
      geom.set_attr("prst", "rect");
      geom.add_child("a:avLst");
      sp_pr.add_child("a:noFill");
      add_text_body(sp, &text_box->text, "ctr");
    }
  }

  for (const auto& c : scene.connectors) {
    auto& cxn = sp_tree.add_child("p:cxnSp");
    auto nv = make_nv_pr("p:nvCxnSpPr", numeric_id[c.id], c.id);
    auto& c_nv_cxn = nv.add_child("p:cNvCxnSpPr");
    auto& st = c_nv_cxn.add_child("a:stCxn");
    st.set_attr("id", std::to_string(numeric_id[c.src]));
    st.set_attr("idx", std::to_string(connection_index(*c.src_port)));
    auto& end = c_nv_cxn.add_child("a:endCxn");
    end.set_attr("id", std::to_string(numeric_id[c.dst]));
    end.set_attr("idx", std::to_string(connection_index(*c.dst_port)));
    nv.add_child("p:nvPr");
    cxn.children.push_back(std::move(nv));

    auto& sp_pr = cxn.add_child("p:spPr");
    const Node* src = scene.find_node(c.src);
    const Node* dst = scene.find_node(c.dst);
    EmuPoint ps{src->bbox.x, src->bbox.y}, pd{dst->bbox.x, dst->bbox.y};
    {
      // attachment points for frame geometry
      auto port_pt = [](const EmuRect& b, Port p) {
        switch (p) {
          case Port::Top: return EmuPoint{b.x + b.w / 2, b.y};
          case Port::Bottom: return EmuPoint{b.x + b.w / 2, b.bottom()};
          case Port::Left: return EmuPoint{b.x, b.y + b.h / 2};
          case Port::Right: return EmuPoint{b.right(), b.y + b.h / 2};
        }
        return EmuPoint{b.x, b.y};
      };
      ps = port_pt(src->bbox, *c.src_port);
      pd = port_pt(dst->bbox, *c.dst_port);
    }

    if (c.kind == ConnectorKind::Elbow) {
      Emu min_x = c.waypoints.front().x, max_x = min_x;
      Emu min_y = c.waypoints.front().y, max_y = min_y;
      for (const auto& w : c.waypoints) {
        min_x = std::min(min_x, w.x);
        max_x = std::max(max_x, w.x);
        min_y = std::min(min_y, w.y);
        max_y = std::max(max_y, w.y);
      }
      EmuRect frame{min_x, min_y, max_x - min_x, max_y - min_y};
      add_xfrm(sp_pr, frame);
      auto& geom = sp_pr.add_child("a:custGeom");
      geom.add_child("a:avLst");
      geom.add_child("a:gdLst");
      geom.add_child("a:ahLst");
      geom.add_child("a:cxnLst");
      auto& rect = geom.add_child("a:rect");
      for (const char* a : {"l", "t", "r", "b"}) rect.set_attr(a, "0");
      auto& path_lst = geom.add_child("a:pathLst");
      auto& path = path_lst.add_child("a:path");
      path.set_attr("w", emu_str(frame.w));
      path.set_attr("h", emu_str(frame.h));
      for (size_t i = 0; i < c.waypoints.size(); ++i) {
        auto& seg = path.add_child(i == 0 ? "a:moveTo" : "a:lnTo");
        auto& pt = seg.add_child("a:pt");
        pt.set_attr("x", emu_str(c.waypoints[i].x - frame.x));
        pt.set_attr("y", emu_str(c.waypoints[i].y - frame.y));
      }
    } else {
      EmuRect frame{std::min(ps.x, pd.x), std::min(ps.y, pd.y), std::abs(ps.x - pd.x),
                    std::abs(ps.y - pd.y)};
      add_xfrm(sp_pr, frame, ps.x > pd.x, ps.y > pd.y);
      auto& geom = sp_pr.add_child("a:prstGeom");
      geom.set_attr("prst", c.kind == ConnectorKind::Straight ? "straightConnector1"
                                                              : "curvedConnector3");
      geom.add_child("a:avLst");
    }
    add_line(sp_pr, c.color, emu_from_points(c.line_width_pt), c.arrow_head, true);
  }

  std::string slide_xml = xml::serialize(sld);

  // presentation part
  xml::XmlNode pres;
  pres.name = "p:presentation";
  pres.set_attr("xmlns:a", kNsA);
  pres.set_attr("xmlns:r", kNsR);
  pres.set_attr("xmlns:p", kNsP);
  auto& master_lst = pres.add_child("p:sldMasterIdLst");
  auto& master_id = master_lst.add_child("p:sldMasterId");
  master_id.set_attr("id", "2147483648");
  master_id.set_attr("r:id", "rId1");
  auto& sld_lst = pres.add_child("p:sldIdLst");
  auto& sld_id = sld_lst.add_child("p:sldId");
  sld_id.set_attr("id", "256");
  sld_id.set_attr("r:id", "rId2");
  auto& sld_sz = pres.add_child("p:sldSz");
  sld_sz.set_attr("cx", emu_str(scene.canvas.width));
  sld_sz.set_attr("cy", emu_str(scene.canvas.height));
  auto& notes_sz = pres.add_child("p:notesSz");
  notes_sz.set_attr("cx", "6858000");
  notes_sz.set_attr("cy", "9144000");

  // slide rels: layout first, then one image rel per asset
  std::string slide_rels =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
      "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
      "<Relationship Id=\"rId1\" Type=\"" +
      std::string(kRelSlideLayout) + "\" Target=\"../slideLayouts/slideLayout1.xml\"/>";
  for (size_t i = 0; i < media_order.size(); ++i) {
    slide_rels += "<Relationship Id=\"rId" + std::to_string(i + 2) + "\" Type=\"" + kRelImage +
                  "\" Target=\"../media/image" + std::to_string(i + 1) + ".png\"/>";
  }
  slide_rels += "</Relationships>";

  std::string content_types =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n"
      "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/content-types\">"
      "<Default Extension=\"rels\" "
      "ContentType=\"application/vnd.openxmlformats-package.relationships+xml\"/>"
      "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
      "<Default Extension=\"png\" ContentType=\"image/png\"/>"
      "<Override PartName=\"/ppt/presentation.xml\" "
      "ContentType=\"application/"
      "vnd.openxmlformats-officedocument.presentationml.presentation.main+xml\"/>"
      "<Override PartName=\"/ppt/slideMasters/slideMaster1.xml\" "
      "ContentType=\"application/"
      "vnd.openxmlformats-officedocument.presentationml.slideMaster+xml\"/>"
      "<Override PartName=\"/ppt/slideLayouts/slideLayout1.xml\" "
      "ContentType=\"application/"
      "vnd.openxmlformats-officedocument.presentationml.slideLayout+xml\"/>"
      "<Override PartName=\"/ppt/theme/theme1.xml\" "
      "ContentType=\"application/vnd.openxmlformats-officedocument.theme+xml\"/>"
      "<Override PartName=\"/ppt/slides/slide1.xml\" "
      "ContentType=\"application/vnd.openxmlformats-officedocument.presentationml.slide+xml\"/>"
      "</Types>";

  zip::Archive archive;
  archive.set("[Content_Types].xml", str_bytes(content_types));
  archive.set("_rels/.rels", str_bytes(kDocRels));
  archive.set("ppt/presentation.xml", str_bytes(xml::serialize(pres)));
  archive.set("ppt/_rels/presentation.xml.rels", str_bytes(kPresentationRels));
  archive.set("ppt/slideMasters/slideMaster1.xml", str_bytes(kSlideMaster));
  archive.set("ppt/slideMasters/_rels/slideMaster1.xml.rels", str_bytes(kMasterRels));
  archive.set("ppt/slideLayouts/slideLayout1.xml", str_bytes(kSlideLayout));
  archive.set("ppt/slideLayouts/_rels/slideLayout1.xml.rels", str_bytes(kLayoutRels));
  archive.set("ppt/theme/theme1.xml", str_bytes(kTheme));
  archive.set("ppt/slides/slide1.xml", str_bytes(slide_xml));
  archive.set("ppt/slides/_rels/slide1.xml.rels", str_bytes(slide_rels));
  for (size_t i = 0; i < media_order.size(); ++i) {
    archive.set("ppt/media/image" + std::to_string(i + 1) + ".png",
                media_bytes[media_order[i]]);
  }
  return zip::write(archive);
}

namespace {

struct SlideContext {
  const zip::Archive* archive = nullptr;
  std::string slide_part;
  std::map<std::string, std::string> rel_targets;  // rel id -> resolved part
  std::map<int, std::string> numeric_names;
};

const xml::XmlNode* find_single_run(const xml::XmlNode& txt_body, const xml::XmlNode** p_out) {
  const auto* p = txt_body.child("a:p");
  *p_out = p;
  if (!p) return nullptr;
  auto runs = p->children_named("a:r");
  return runs.size() == 1 ? runs[0] : nullptr;
}

bool read_text_spec(const xml::XmlNode& txt_body, TextSpec& out) {
  const xml::XmlNode* p = nullptr;
  const auto* r = find_single_run(txt_body, &p);
  if (!r) return false;
  const auto* t = r->child("a:t");
  if (!t) return false;
  out.content = t->text_content();
  if (out.content.empty()) return false;
  const auto* p_pr = p->child("a:pPr");
  const std::string* algn = p_pr ? p_pr->attr("algn") : nullptr;
  if (!algn || !align_from_attr(*algn, out.align)) return false;
  const auto* r_pr = r->child("a:rPr");
  if (!r_pr) return false;
  const auto* sz = r_pr->attr("sz");
  if (!sz) return false;
  out.font_size_pt = std::stod(*sz) / 100.0;
  const auto* b = r_pr->attr("b");
  out.bold = b && *b == "1";
  const auto* fill = r_pr->child("a:solidFill");
  const auto* clr = fill ? fill->child("a:srgbClr") : nullptr;
  const auto* val = clr ? clr->attr("val") : nullptr;
  if (!val) return false;
  out.color = make_color(*val);
  return true;
}

bool read_xfrm(const xml::XmlNode& sp_pr, EmuRect& out) {
  const auto* xfrm = sp_pr.child("a:xfrm");
  if (!xfrm) return false;
  const auto* off = xfrm->child("a:off");
  const auto* ext = xfrm->child("a:ext");
  if (!off || !ext) return false;
  const auto *x = off->attr("x"), *y = off->attr("y");
  const auto *cx = ext->attr("cx"), *cy = ext->attr("cy");
  if (!x || !y || !cx || !cy) return false;
  out = EmuRect{std::stoll(*x), std::stoll(*y), std::stoll(*cx), std::stoll(*cy)};
  return true;
}

bool read_fill(const xml::XmlNode& sp_pr, Color& color, double& alpha) {
  const auto* fill = sp_pr.child("a:solidFill");
  const auto* clr = fill ? fill->child("a:srgbClr") : nullptr;
  const auto* val = clr ? clr->attr("val") : nullptr;
  if (!val) return false;
  color = make_color(*val);
  alpha = 1.0;
  if (const auto* a = clr->child("a:alpha")) {
    if (const auto* av = a->attr("val")) alpha = alpha_from_pct_thousandths(std::stoi(*av));
  }
  return true;
}

bool read_line(const xml::XmlNode& sp_pr, Color& color, double& width_pt, ArrowHead* tail) {
  const auto* ln = sp_pr.child("a:ln");
  if (!ln) return false;
  const auto* w = ln->attr("w");
  if (!w) return false;
  width_pt = points_from_emu(std::stoll(*w));
  const auto* fill = ln->child("a:solidFill");
  const auto* clr = fill ? fill->child("a:srgbClr") : nullptr;
  const auto* val = clr ? clr->attr("val") : nullptr;
  if (!val) return false;
  color = make_color(*val);
  if (tail) {
    const auto* tail_end = ln->child("a:tailEnd");
    if (!tail_end) return false;
    const auto* type = tail_end->attr("type");
    if (!type) return false;
    if (*type == "none") {
      *tail = ArrowHead::None;
    } else {
      const auto* tw = tail_end->attr("w");
      if (!tw) return false;
      if (*tw == "sm") *tail = ArrowHead::Small;
      else if (*tw == "med") *tail = ArrowHead::Medium;
      else if (*tw == "lg") *tail = ArrowHead::Large;
      else return false;
    }
  }
  return true;
}

// Attempts a lossless reconstruction of one authored element; returns
// false when the element does not match the emitted grammar.
bool parse_shape(const SlideContext& ctx, const xml::XmlNode& el, SceneGraph& scene) {
  const auto* nv = el.child("p:nvSpPr");
  const auto* c_nv = nv ? nv->child("p:cNvPr") : nullptr;
  const auto* name = c_nv ? c_nv->attr("name") : nullptr;
  if (!name || name->empty()) return false;
  const auto* sp_pr = el.child("p:spPr");
  const auto* txt_body = el.child("p:txBody");
  if (!sp_pr || !txt_body) return false;
  EmuRect bbox;
  if (!read_xfrm(*sp_pr, bbox) || bbox.w <= 0 || bbox.h <= 0) return false;
  const auto* geom = sp_pr->child("a:prstGeom");
  const auto* prst = geom ? geom->attr("prst") : nullptr;
  if (!prst) return false;

  const auto* c_nv_sp = nv->child("p:cNvSpPr");
  bool is_text_box = c_nv_sp && c_nv_sp->attr("txBox") && *c_nv_sp->attr("txBox") == "1";
  const auto* body_pr = txt_body->child("a:bodyPr");
  const std::string* anchor = body_pr ? body_pr->attr("anchor") : nullptr;
  if (!anchor) return false;

  if (is_text_box) {
    if (*prst != "rect" || !sp_pr->child("a:noFill")) return false;
    TextBoxData data;
    if (!read_text_spec(*txt_body, data.text)) return false;
    scene.nodes.push_back(Node{*name, bbox, std::move(data)});
    return true;
  }

  if (*anchor == "t") {
    if (*prst != "rect") return false;
    ContainerData data;
    if (!read_fill(*sp_pr, data.fill, data.alpha)) return false;
    double width_pt = 0;
    if (!read_line(*sp_pr, data.stroke, width_pt, nullptr)) return false;
    TextSpec title;
    if (read_text_spec(*txt_body, title)) {
      data.title = title;
    } else if (const auto* p = txt_body->child("a:p"); !p || !p->children.empty()) {
      return false;  // neither a clean title nor an empty paragraph
    }
    scene.nodes.push_back(Node{*name, bbox, std::move(data)});
    return true;
  }

  if (*anchor == "ctr") {
    BlockData data;
    if (!shape_kind_for_preset(*prst, data.shape_kind)) return false;
    double alpha = 1.0;
    if (!read_fill(*sp_pr, data.fill, alpha) || alpha != 1.0) return false;
    double width_pt = 0;
    if (!read_line(*sp_pr, data.stroke, width_pt, nullptr)) return false;
    if (!read_text_spec(*txt_body, data.label)) return false;
    scene.nodes.push_back(Node{*name, bbox, std::move(data)});
    return true;
  }
  return false;
}

bool parse_picture(const SlideContext& ctx, const xml::XmlNode& el, SceneGraph& scene) {
  const auto* nv = el.child("p:nvPicPr");
  const auto* c_nv = nv ? nv->child("p:cNvPr") : nullptr;
  const auto* name = c_nv ? c_nv->attr("name") : nullptr;
  const auto* descr = c_nv ? c_nv->attr("descr") : nullptr;
  if (!name || name->empty() || !descr || descr->empty()) return false;
  const auto* blip_fill = el.child("p:blipFill");
  const auto* blip = blip_fill ? blip_fill->child("a:blip") : nullptr;
  const auto* embed = blip ? blip->attr("r:embed") : nullptr;
  if (!embed || !ctx.rel_targets.count(*embed)) return false;
  const auto* media = ctx.archive->find(ctx.rel_targets.at(*embed));
  if (!media) return false;
  const auto* sp_pr = el.child("p:spPr");
  EmuRect bbox;
  if (!sp_pr || !read_xfrm(*sp_pr, bbox) || bbox.w <= 0 || bbox.h <= 0) return false;

  scene.assets[*descr] = AssetRef{"", media->data};
  scene.nodes.push_back(Node{*name, bbox, IconData{*descr}});
  return true;
}

bool parse_connector(const SlideContext& ctx, const xml::XmlNode& el, SceneGraph& scene) {
  const auto* nv = el.child("p:nvCxnSpPr");
  const auto* c_nv = nv ? nv->child("p:cNvPr") : nullptr;
  const auto* name = c_nv ? c_nv->attr("name") : nullptr;
  if (!name || name->empty()) return false;
  const auto* c_nv_cxn = nv->child("p:cNvCxnSpPr");
  const auto* st = c_nv_cxn ? c_nv_cxn->child("a:stCxn") : nullptr;
  const auto* end = c_nv_cxn ? c_nv_cxn->child("a:endCxn") : nullptr;
  if (!st || !end) return false;

  ConnectorSpec c;
  c.id = *name;
  for (const auto& [node, is_src] : {std::pair{st, true}, std::pair{end, false}}) {
    const auto* id = node->attr("id");
    const auto* idx = node->attr("idx");
    if (!id || !idx) return false;
    auto it = ctx.numeric_names.find(std::stoi(*id));
    if (it == ctx.numeric_names.end() || it->second.empty()) return false;
    Port port = port_from_connection_index(std::stoi(*idx));
    if (is_src) {
      c.src = it->second;
      c.src_port = port;
    } else {
      c.dst = it->second;
      c.dst_port = port;
    }
  }

  const auto* sp_pr = el.child("p:spPr");
  if (!sp_pr) return false;
  if (const auto* geom = sp_pr->child("a:prstGeom")) {
    const auto* prst = geom->attr("prst");
    if (!prst) return false;
    if (*prst == "straightConnector1") c.kind = ConnectorKind::Straight;
    else if (*prst == "curvedConnector3") c.kind = ConnectorKind::Curve;
    else return false;
  } else if (const auto* cust = sp_pr->child("a:custGeom")) {
    c.kind = ConnectorKind::Elbow;
    EmuRect frame;
    if (!read_xfrm(*sp_pr, frame)) return false;
    const auto* path_lst = cust->child("a:pathLst");
    const auto* path = path_lst ? path_lst->child("a:path") : nullptr;
    if (!path) return false;
    for (const auto& seg : path->children) {
      if (seg.name != "a:moveTo" && seg.name != "a:lnTo") continue;
      const auto* pt = seg.child("a:pt");
      const auto* x = pt ? pt->attr("x") : nullptr;
      const auto* y = pt ? pt->attr("y") : nullptr;
      if (!x || !y) return false;
      c.waypoints.push_back(EmuPoint{frame.x + std::stoll(*x), frame.y + std::stoll(*y)});
    }
    if (c.waypoints.size() < 2) return false;
  } else {
    return false;
  }

  if (!read_line(*sp_pr, c.color, c.line_width_pt, &c.arrow_head)) return false;
  scene.connectors.push_back(std::move(c));
  return true;
}

SlideContext open_slide(const zip::Archive& archive) {
  SlideContext ctx;
  ctx.archive = &archive;
  ctx.slide_part = locate_slide_part(archive);
  std::string rels_name = rels_part_for(ctx.slide_part);
  if (const auto* rels = archive.find(rels_name)) {
    xml::XmlNode root = xml::parse(std::string(rels->data.begin(), rels->data.end()));
    for (const auto& rel : parse_rels(root)) {
      if (rel.external) continue;
      ctx.rel_targets[rel.id] = resolve_target(dirname_of(ctx.slide_part), rel.target);
    }
  }
  return ctx;
}

}  // namespace

std::string locate_slide_part(const zip::Archive& archive) {
  // follow the package rels to the presentation, then its first slide rel
  const auto* doc_rels = archive.find("_rels/.rels");
  if (!doc_rels) throw Error("MISSING_SLIDE_PART", "package relationships part is missing");
  std::string pres_part;
  {
    xml::XmlNode root = xml::parse(std::string(doc_rels->data.begin(), doc_rels->data.end()));
    for (const auto& rel : parse_rels(root)) {
      if (rel.type == kRelOfficeDocument) {
        pres_part = resolve_target("", rel.target);
        break;
      }
    }
  }
  if (pres_part.empty() || !archive.find(pres_part)) {
    throw Error("MISSING_SLIDE_PART", "presentation part is missing");
  }
  const auto* pres_rels = archive.find(rels_part_for(pres_part));
  if (!pres_rels) throw Error("MISSING_SLIDE_PART", "presentation relationships are missing");
  xml::XmlNode root = xml::parse(std::string(pres_rels->data.begin(), pres_rels->data.end()));
  for (const auto& rel : parse_rels(root)) {
    if (rel.type == kRelSlide) {
      std::string part = resolve_target(dirname_of(pres_part), rel.target);
      if (!archive.find(part)) throw Error("MISSING_SLIDE_PART", "slide part " + part + " is missing");
      return part;
    }
  }
  throw Error("MISSING_SLIDE_PART", "presentation references no slide");
}

xml::XmlNode load_slide_xml(const std::vector<std::uint8_t>& bytes) {
  zip::Archive archive = zip::read(bytes);
  std::string part = locate_slide_part(archive);
  const auto* entry = archive.find(part);
  try {
    return xml::parse(std::string(entry->data.begin(), entry->data.end()));
  } catch (const Error& e) {
    throw Error("BAD_XML", part, part + ": " + e.what());
  }
}

ParsedArchive parse(const std::vector<std::uint8_t>& bytes) {
  zip::Archive archive = zip::read(bytes);
  SlideContext ctx = open_slide(archive);

  const auto* slide_entry = archive.find(ctx.slide_part);
  xml::XmlNode sld;
  try {
    sld = xml::parse(std::string(slide_entry->data.begin(), slide_entry->data.end()));
  } catch (const Error& e) {
    throw Error("BAD_XML", ctx.slide_part, ctx.slide_part + ": " + e.what());
  }

  ParsedArchive out;

  // canvas from the presentation part
  if (const auto* pres = archive.find("ppt/presentation.xml")) {
    xml::XmlNode root = xml::parse(std::string(pres->data.begin(), pres->data.end()));
    if (const auto* sz = root.child("p:sldSz")) {
      const auto* cx = sz->attr("cx");
      const auto* cy = sz->attr("cy");
      if (cx && cy) out.scene.canvas = Canvas{std::stoll(*cx), std::stoll(*cy)};
    }
  }

  const auto* c_sld = sld.child("p:cSld");
  const auto* sp_tree = c_sld ? c_sld->child("p:spTree") : nullptr;
  if (!sp_tree) throw Error("BAD_XML", ctx.slide_part, "slide has no shape tree");
  collect_numeric_ids(*sp_tree, ctx.numeric_names);

  int foreign_ordinal = 0;
  for (const auto& el : sp_tree->children) {
    if (!el.is_element()) continue;
    if (el.name == "p:nvGrpSpPr" || el.name == "p:grpSpPr") continue;

    bool authored = false;
    try {
      if (el.name == "p:sp") authored = parse_shape(ctx, el, out.scene);
      else if (el.name == "p:pic") authored = parse_picture(ctx, el, out.scene);
      else if (el.name == "p:cxnSp") authored = parse_connector(ctx, el, out.scene);
    } catch (const std::exception&) {
      authored = false;
    }
    if (!authored) {
      std::string id;
      for (const char* nv : {"p:nvSpPr", "p:nvCxnSpPr", "p:nvPicPr", "p:nvGrpSpPr",
                             "p:nvGraphicFramePr"}) {
        if (const auto* nvp = el.child(nv)) {
          if (const auto* c_nv = nvp->child("p:cNvPr")) {
            if (const auto* name = c_nv->attr("name")) id = *name;
          }
        }
      }
      if (id.empty()) id = "foreign-" + std::to_string(++foreign_ordinal);
      out.foreign.push_back(ForeignRecord{id, el.name, xml::canonical_hash(el)});
    }
  }
  return out;
}

ArchiveReport validate_archive(const std::vector<std::uint8_t>& bytes) {
  ArchiveReport report;
  zip::Archive archive;
  try {
    archive = zip::read(bytes);
  } catch (const Error& e) {
    report.well_formed = false;
    report.notes.push_back(e.what());
    return report;
  }

  auto ends_with = [](const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
  };

  std::map<std::string, xml::XmlNode> parsed;
  for (const auto& e : archive.entries) {
    if (!ends_with(e.name, ".xml") && !ends_with(e.name, ".rels")) continue;
    try {
      parsed[e.name] = xml::parse(std::string(e.data.begin(), e.data.end()));
    } catch (const Error& err) {
      report.well_formed = false;
      report.notes.push_back(e.name + ": " + err.what());
    }
  }

  // content type coverage
  auto ct = parsed.find("[Content_Types].xml");
  if (ct == parsed.end()) {
    report.well_formed = false;
    report.notes.push_back("[Content_Types].xml is missing");
  } else {
    std::set<std::string> default_ext;
    std::set<std::string> overrides;
    for (const auto& child : ct->second.children) {
      if (child.name == "Default") {
        if (const auto* ext = child.attr("Extension")) default_ext.insert(*ext);
      } else if (child.name == "Override") {
        if (const auto* part = child.attr("PartName")) overrides.insert(*part);
      }
    }
    for (const auto& e : archive.entries) {
      if (e.name == "[Content_Types].xml") continue;
      std::string ext;
      size_t dot = e.name.rfind('.');
      if (dot != std::string::npos) ext = e.name.substr(dot + 1);
      if (!default_ext.count(ext) && !overrides.count("/" + e.name)) {
        report.missing_content_types.push_back(e.name);
      }
    }
  }

  // relationship resolution
  for (const auto& [name, root] : parsed) {
    if (!ends_with(name, ".rels")) continue;
    // owner: strip "_rels/" dir and ".rels" suffix
    std::string dir = dirname_of(name);                       // e.g. ppt/_rels
    std::string owner_dir = dir.size() >= 5 ? dir.substr(0, dir.size() - 5) : "";  // strip _rels
    while (!owner_dir.empty() && owner_dir.back() == '/') owner_dir.pop_back();
    for (const auto& rel : parse_rels(root)) {
      if (rel.external) continue;
      std::string target = resolve_target(owner_dir, rel.target);
      if (!archive.find(target)) {
        report.unresolved_rels.push_back(name + " -> " + rel.target);
      }
    }
  }

  // connection references inside slide parts
  for (const auto& [name, root] : parsed) {
    if (name.rfind("ppt/slides/", 0) != 0 || !ends_with(name, ".xml")) continue;
    const auto* c_sld = root.child("p:cSld");
    const auto* sp_tree = c_sld ? c_sld->child("p:spTree") : nullptr;
    if (!sp_tree) continue;
    std::map<int, std::string> ids;
    collect_numeric_ids(*sp_tree, ids);
    for (const auto& el : sp_tree->children) {
      if (el.name != "p:cxnSp") continue;
      std::string cxn_name = "?";
      if (const auto* nv = el.child("p:nvCxnSpPr")) {
        if (const auto* c_nv = nv->child("p:cNvPr")) {
          if (const auto* n = c_nv->attr("name")) cxn_name = *n;
        }
        if (const auto* c_nv_cxn = nv->child("p:cNvCxnSpPr")) {
          for (const char* tag : {"a:stCxn", "a:endCxn"}) {
            if (const auto* cxn = c_nv_cxn->child(tag)) {
              if (const auto* id = cxn->attr("id")) {
                try {
                  if (!ids.count(std::stoi(*id))) {
                    report.dangling_connection_refs.push_back(cxn_name + " -> id " + *id);
                  }
                } catch (...) {
                  report.dangling_connection_refs.push_back(cxn_name + " -> id " + *id);
                }
              }
            }
          }
        }
      }
    }
  }

  return report;
}

}  // namespace figforge::pptx
