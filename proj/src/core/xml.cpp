#include "core/xml.hpp"

#include <cctype>
#include <sstream>

#include "core/error.hpp"

namespace figforge::xml {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  XmlNode run() {
    skip_prolog();
    XmlNode root = parse_element();
    skip_misc();
    if (pos_ != text_.size()) fail("trailing content after document element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) {
    int line = 1;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i)
      if (text_[i] == '\n') ++line;
    throw Error("XML_SYNTAX", "line " + std::to_string(line) + ": " + message);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool starts_with(const char* s) const { return text_.compare(pos_, strlen_(s), s) == 0; }
  static size_t strlen_(const char* s) {
    size_t n = 0;
    while (s[n]) ++n;
    return n;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void skip_until(const std::string& end) {
    size_t found = text_.find(end, pos_);
    if (found == std::string::npos) fail("unterminated '" + end + "' construct");
    pos_ = found + end.size();
  }

  void skip_prolog() {
    skip_ws();
    while (pos_ < text_.size()) {
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!")) {
        skip_until(">");
      } else {
        break;
      }
      skip_ws();
    }
  }

  void skip_misc() {
    skip_ws();
    while (pos_ < text_.size() && starts_with("<!--")) {
      skip_until("-->");
      skip_ws();
    }
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' ||
           c == '.';
  }

  std::string parse_name() {
    size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  std::string decode_entities(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      size_t semi = raw.find(';', i);
      if (semi == std::string::npos) fail("unterminated entity reference");
      std::string ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "lt") out += '<';
      else if (ent == "gt") out += '>';
      else if (ent == "amp") out += '&';
      else if (ent == "quot") out += '"';
      else if (ent == "apos") out += '\'';
      else if (!ent.empty() && ent[0] == '#') {
        long code = 0;
        try {
          code = ent[1] == 'x' || ent[1] == 'X' ? std::stol(ent.substr(2), nullptr, 16)
                                                : std::stol(ent.substr(1));
        } catch (...) {
          fail("bad numeric character reference '&" + ent + ";'");
        }
        // UTF-8 encode
        if (code < 0 || code > 0x10FFFF) fail("character reference out of range");
        if (code < 0x80) {
          out += static_cast<char>(code);
        } else if (code < 0x800) {
          out += static_cast<char>(0xC0 | (code >> 6));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
          out += static_cast<char>(0xE0 | (code >> 12));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
          out += static_cast<char>(0xF0 | (code >> 18));
          out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        }
      } else {
        fail("unknown entity '&" + ent + ";'");
      }
      i = semi;
    }
    return out;
  }

  XmlNode parse_element() {
    if (peek() != '<') fail("expected '<'");
    ++pos_;
    XmlNode node;
    node.name = parse_name();
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '/') {
        ++pos_;
        if (peek() != '>') fail("malformed self-closing tag");
        ++pos_;
        return node;
      }
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\0') fail("unterminated start tag for <" + node.name + ">");
      std::string attr_name = parse_name();
      skip_ws();
      if (peek() != '=') fail("attribute '" + attr_name + "' missing '='");
      ++pos_;
      skip_ws();
      char quote = peek();
      if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
      ++pos_;
      size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != quote) ++pos_;
      if (pos_ == text_.size()) fail("unterminated attribute value");
      node.attrs.emplace_back(attr_name, decode_entities(text_.substr(start, pos_ - start)));
      ++pos_;
    }

    // content
    std::string pending_text;
    auto flush_text = [&] {
      if (!pending_text.empty()) {
        node.add_text(decode_entities(pending_text));
        pending_text.clear();
      }
    };
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated element <" + node.name + ">");
      if (peek() == '<') {
        if (starts_with("<!--")) {
          flush_text();
          skip_until("-->");
          continue;
        }
        if (starts_with("<![CDATA[")) {
          pos_ += 9;
          size_t end = text_.find("]]>", pos_);
          if (end == std::string::npos) fail("unterminated CDATA");
          XmlNode t;
          flush_text();
          node.add_text(text_.substr(pos_, end - pos_));
          pos_ = end + 3;
          continue;
        }
        if (starts_with("</")) {
          flush_text();
          pos_ += 2;
          std::string closing = parse_name();
          if (closing != node.name)
            fail("mismatched closing tag </" + closing + "> for <" + node.name + ">");
          skip_ws();
          if (peek() != '>') fail("malformed closing tag");
          ++pos_;
          return node;
        }
        flush_text();
        node.children.push_back(parse_element());
        continue;
      }
      pending_text += text_[pos_++];
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
};

void serialize_node(const XmlNode& node, std::string& out) {
  if (node.is_text()) {
    out += escape_text(node.text);
    return;
  }
  out += '<';
  out += node.name;
  for (const auto& [k, v] : node.attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += escape_attr(v);
    out += '"';
  }
  if (node.children.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  for (const auto& c : node.children) serialize_node(c, out);
  out += "</";
  out += node.name;
  out += '>';
}

}  // namespace

const XmlNode* XmlNode::child(const std::string& child_name) const {
  for (const auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

XmlNode* XmlNode::child(const std::string& child_name) {
  for (auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(const std::string& child_name) const {
  std::vector<const XmlNode*> out;
  for (const auto& c : children)
    if (c.name == child_name) out.push_back(&c);
  return out;
}

const std::string* XmlNode::attr(const std::string& attr_name) const {
  for (const auto& [k, v] : attrs)
    if (k == attr_name) return &v;
  return nullptr;
}

void XmlNode::set_attr(const std::string& attr_name, const std::string& value) {
  for (auto& [k, v] : attrs) {
    if (k == attr_name) {
      v = value;
      return;
    }
  }
  attrs.emplace_back(attr_name, value);
}

XmlNode& XmlNode::add_child(const std::string& child_name) {
  XmlNode n;
  n.name = child_name;
  children.push_back(std::move(n));
  return children.back();
}

XmlNode& XmlNode::add_text(const std::string& content) {
  XmlNode n;
  n.text = content;
  children.push_back(std::move(n));
  return children.back();
}

std::string XmlNode::text_content() const {
  std::string out;
  for (const auto& c : children) {
    if (c.is_text()) out += c.text;
    else out += c.text_content();
  }
  return out;
}

XmlNode parse(const std::string& text) { return Parser(text).run(); }

std::string serialize(const XmlNode& root, bool with_declaration) {
  std::string out;
  if (with_declaration) {
    out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\r\n";
  }
  serialize_node(root, out);
  return out;
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attr(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace figforge::xml
