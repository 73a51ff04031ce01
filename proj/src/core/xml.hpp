#pragma once

#include <string>
#include <utility>
#include <vector>

namespace figforge::xml {

// Small DOM for the controlled OpenXML subset this toolchain reads and
// writes. Element names keep their namespace prefixes verbatim.
struct XmlNode {
  std::string name;  // empty => text node
  std::string text;  // text nodes only
  std::vector<std::pair<std::string, std::string>> attrs;  // document order
  std::vector<XmlNode> children;

  bool is_text() const { return name.empty(); }
  bool is_element() const { return !name.empty(); }

  const XmlNode* child(const std::string& child_name) const;
  XmlNode* child(const std::string& child_name);
  std::vector<const XmlNode*> children_named(const std::string& child_name) const;
  const std::string* attr(const std::string& attr_name) const;
  void set_attr(const std::string& attr_name, const std::string& value);
  XmlNode& add_child(const std::string& child_name);
  XmlNode& add_text(const std::string& content);

  // Concatenated descendant text.
  std::string text_content() const;
};

// Throws Error("XML_SYNTAX", "line N: ...") on malformed input. Comments,
// the XML declaration and DOCTYPE are skipped; CDATA and the five named
// entities plus numeric references are decoded.
XmlNode parse(const std::string& text);

std::string serialize(const XmlNode& root, bool with_declaration = true);

std::string escape_text(const std::string& s);
std::string escape_attr(const std::string& s);

}  // namespace figforge::xml
