#include "core/diff.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/pptx.hpp"
#include "core/xml.hpp"
#include "core/xml_canon.hpp"

namespace figforge::diff {

namespace {

// Short aliases for the canonical paths humans touch most; anything else
// reports under its full path.
std::string friendly_attr(const std::string& key) {
  static const std::vector<std::pair<std::string, std::string>> aliases = {
      {"p:spPr/a:xfrm/a:off@x", "x"},
      {"p:spPr/a:xfrm/a:off@y", "y"},
      {"p:spPr/a:xfrm/a:ext@cx", "cx"},
      {"p:spPr/a:xfrm/a:ext@cy", "cy"},
      {"p:spPr/a:solidFill/a:srgbClr@val", "fill"},
      {"p:spPr/a:solidFill/a:srgbClr/a:alpha@val", "alpha"},
      {"p:spPr/a:ln/a:solidFill/a:srgbClr@val", "stroke"},
      {"p:spPr/a:ln@w", "line_width"},
      {"p:spPr/a:prstGeom@prst", "shape"},
      {"p:txBody/a:p/a:r/a:t#text", "text"},
      {"p:txBody/a:p/a:r/a:rPr@sz", "font_size"},
      {"p:txBody/a:p/a:r/a:rPr@b", "bold"},
      {"p:txBody/a:p/a:r/a:rPr/a:solidFill/a:srgbClr@val", "font_color"},
      {"p:txBody/a:p/a:pPr@algn", "align"},
  };
  for (const auto& [path, alias] : aliases) {
    if (key == path) return alias;
  }
  return key;
}

struct SlideElement {
  std::string key;
  std::string tag;
  std::map<std::string, std::string> attrs;
};

// Numeric connection references are rewritten to the referenced element's
// name so id renumbering never shows up as an edit.
void remap_connection_refs(xml::XmlNode& node, const std::map<int, std::string>& names) {
  if (node.name == "a:stCxn" || node.name == "a:endCxn") {
    for (auto& [k, v] : node.attrs) {
      if (k != "id") continue;
      try {
        auto it = names.find(std::stoi(v));
        if (it != names.end()) v = "ref:" + it->second;
      } catch (...) {
      }
    }
  }
  for (auto& c : node.children) remap_connection_refs(c, names);
}

void collect_ids(const xml::XmlNode& sp_tree, std::map<int, std::string>& out) {
  for (const auto& el : sp_tree.children) {
    for (const auto& nv : el.children) {
      if (nv.name.rfind("p:nv", 0) != 0) continue;
      if (const auto* c_nv = nv.child("p:cNvPr")) {
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

std::vector<SlideElement> slide_elements(const std::vector<std::uint8_t>& bytes,
                                         const std::string& side) {
  xml::XmlNode sld;
  try {
    sld = pptx::load_slide_xml(bytes);
  } catch (const Error& e) {
    throw Error("DIFF_INPUT", side, side + " archive: " + e.what());
  }
  const auto* c_sld = sld.child("p:cSld");
  xml::XmlNode* sp_tree_mut = nullptr;
  if (c_sld) {
    for (auto& c : sld.children) {
      if (c.name == "p:cSld") {
        sp_tree_mut = c.child("p:spTree");
        break;
      }
    }
  }
  if (!sp_tree_mut) throw Error("DIFF_INPUT", side, side + " archive: slide has no shape tree");

  std::map<int, std::string> names;
  collect_ids(*sp_tree_mut, names);
  remap_connection_refs(*sp_tree_mut, names);

  std::vector<SlideElement> out;
  std::map<std::string, int> name_count;
  for (const auto& el : sp_tree_mut->children) {
    if (!el.is_element()) continue;
    if (el.name == "p:nvGrpSpPr" || el.name == "p:grpSpPr") continue;
    std::string name;
    for (const auto& nv : el.children) {
      if (nv.name.rfind("p:nv", 0) != 0) continue;
      if (const auto* c_nv = nv.child("p:cNvPr")) {
        if (const auto* n = c_nv->attr("name")) name = *n;
      }
    }
    if (!name.empty()) name_count[name]++;

    SlideElement se;
    se.tag = el.name;
    se.key = name;  // finalized below once uniqueness is known
    se.attrs = xml::canonical_attribute_map(el);
    // the numeric shape id is bookkeeping, not content
    for (auto it = se.attrs.begin(); it != se.attrs.end();) {
      if (it->first.size() >= 10 &&
          it->first.find("p:cNvPr@id") != std::string::npos) {
        it = se.attrs.erase(it);
      } else {
        ++it;
      }
    }
    out.push_back(std::move(se));
  }

  // fallback keys: type + canonical hash + ordinal, document order
  std::map<std::string, int> fallback_ordinal;
  for (auto& se : out) {
    if (!se.key.empty() && name_count[se.key] == 1) {
      se.key = "id:" + se.key;
      continue;
    }
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [k, v] : se.attrs) {
      for (unsigned char c : k) {
        h ^= c;
        h *= 1099511628211ull;
      }
      for (unsigned char c : v) {
        h ^= c;
        h *= 1099511628211ull;
      }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    std::string base = "~" + se.tag + "#" + hex;
    int ord = fallback_ordinal[base]++;
    se.key = base + "#" + std::to_string(ord);
  }
  return out;
}

// Matched keys whose relative order survives; everything else moved.
std::set<std::string> stable_order_keys(const std::vector<std::string>& before,
                                        const std::vector<std::string>& after) {
  std::vector<std::vector<int>> lcs(before.size() + 1, std::vector<int>(after.size() + 1, 0));
  for (size_t i = before.size(); i-- > 0;) {
    for (size_t j = after.size(); j-- > 0;) {
      lcs[i][j] = before[i] == after[j] ? lcs[i + 1][j + 1] + 1
                                        : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::set<std::string> stable;
  size_t i = 0, j = 0;
  while (i < before.size() && j < after.size()) {
    if (before[i] == after[j]) {
      stable.insert(before[i]);
      ++i;
      ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return stable;
}

}  // namespace

std::string to_string(EditKind k) {
  switch (k) {
    case EditKind::Modify: return "Modify";
    case EditKind::Add: return "Add";
    case EditKind::Delete: return "Delete";
  }
  return "Modify";
}

std::map<std::string, std::string> canonicalize_element(const std::string& xml_fragment) {
  xml::XmlNode node = xml::parse(xml_fragment);
  return xml::canonical_attribute_map(node);
}

EditDistanceReport edit_distance(const std::vector<std::uint8_t>& before,
                                 const std::vector<std::uint8_t>& after) {
  auto before_els = slide_elements(before, "before");
  auto after_els = slide_elements(after, "after");

  std::map<std::string, const SlideElement*> before_by_key, after_by_key;
  std::vector<std::string> before_keys, after_keys;
  for (const auto& e : before_els) {
    before_by_key[e.key] = &e;
    before_keys.push_back(e.key);
  }
  for (const auto& e : after_els) {
    after_by_key[e.key] = &e;
    after_keys.push_back(e.key);
  }

  // relative order among elements present on both sides
  std::vector<std::string> before_matched, after_matched;
  for (const auto& k : before_keys)
    if (after_by_key.count(k)) before_matched.push_back(k);
  for (const auto& k : after_keys)
    if (before_by_key.count(k)) after_matched.push_back(k);
  std::set<std::string> stable = stable_order_keys(before_matched, after_matched);

  auto strip_prefix = [](const std::string& key) {
    return key.rfind("id:", 0) == 0 ? key.substr(3) : key;
  };

  EditDistanceReport report;
  std::vector<EditOp> deletes, modifies, adds;
  for (const auto& k : before_keys) {
    if (!after_by_key.count(k)) {
      deletes.push_back(EditOp{EditKind::Delete, strip_prefix(k), {}});
    }
  }
  for (const auto& k : after_keys) {
    if (!before_by_key.count(k)) {
      adds.push_back(EditOp{EditKind::Add, strip_prefix(k), {}});
    }
  }
  for (const auto& k : before_matched) {
    const auto& a = before_by_key[k]->attrs;
    const auto& b = after_by_key[k]->attrs;
    std::set<std::string> changed;
    for (const auto& [key, val] : a) {
      auto it = b.find(key);
      if (it == b.end() || it->second != val) changed.insert(friendly_attr(key));
    }
    for (const auto& [key, val] : b) {
      if (!a.count(key)) changed.insert(friendly_attr(key));
    }
    if (!stable.count(k)) changed.insert("z-order");
    if (!changed.empty()) {
      modifies.push_back(EditOp{EditKind::Modify, strip_prefix(k),
                                std::vector<std::string>(changed.begin(), changed.end())});
    }
  }

  auto by_id = [](const EditOp& a, const EditOp& b) { return a.element_id < b.element_id; };
  std::sort(deletes.begin(), deletes.end(), by_id);
  std::sort(modifies.begin(), modifies.end(), by_id);
  std::sort(adds.begin(), adds.end(), by_id);
  report.ops.insert(report.ops.end(), deletes.begin(), deletes.end());
  report.ops.insert(report.ops.end(), modifies.begin(), modifies.end());
  report.ops.insert(report.ops.end(), adds.begin(), adds.end());
  report.distance = static_cast<int>(report.ops.size());
  return report;
}

std::string diff_report(const EditDistanceReport& report) {
  std::ostringstream out;
  for (const auto& op : report.ops) {
    out << to_string(op.kind) << " " << op.element_id;
    if (op.kind == EditKind::Modify) {
      out << " (";
      for (size_t i = 0; i < op.changed_attrs.size(); ++i) {
        if (i) out << ", ";
        out << op.changed_attrs[i];
      }
      out << ")";
    }
    out << "\n";
  }
  out << "distance: " << report.distance << "\n";
  return out.str();
}

std::string diff_report_json(const EditDistanceReport& report) {
  nlohmann::ordered_json doc;
  doc["distance"] = report.distance;
  auto& ops = doc["ops"] = nlohmann::ordered_json::array();
  for (const auto& op : report.ops) {
    nlohmann::ordered_json o;
    o["kind"] = to_string(op.kind);
    o["element_id"] = op.element_id;
    if (op.kind == EditKind::Modify) o["changed_attrs"] = op.changed_attrs;
    ops.push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

}  // namespace figforge::diff
