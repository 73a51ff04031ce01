#include "core/xml_canon.hpp"

#include <cctype>

namespace figforge::xml {

namespace {

bool whitespace_only(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

void walk(const XmlNode& node, const std::string& path,
          std::map<std::string, std::string>& out) {
  for (const auto& [k, v] : node.attrs) {
    out[path + "@" + k] = normalize_scalar(v);
  }
  std::map<std::string, int> seen;
  std::string text;
  for (const auto& c : node.children) {
    if (c.is_text()) {
      if (!whitespace_only(c.text)) text += c.text;
      continue;
    }
    int n = seen[c.name]++;
    std::string child_path = path.empty() ? c.name : path + "/" + c.name;
    if (n > 0) child_path += "[" + std::to_string(n + 1) + "]";
    walk(c, child_path, out);
  }
  if (!text.empty()) out[path + "#text"] = text;
}

}  // namespace

std::string normalize_scalar(const std::string& value) {
  size_t b = 0, e = value.size();
  while (b < e && std::isspace(static_cast<unsigned char>(value[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(value[e - 1]))) --e;
  std::string t = value.substr(b, e - b);

  // canonical integer form: strip '+' and leading zeros
  size_t i = 0;
  bool neg = false;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
    neg = t[i] == '-';
    ++i;
  }
  if (i == t.size()) return t;
  for (size_t j = i; j < t.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(t[j]))) return t;
  }
  while (i + 1 < t.size() && t[i] == '0') ++i;
  std::string digits = t.substr(i);
  if (digits == "0") return "0";
  return neg ? "-" + digits : digits;
}

std::map<std::string, std::string> canonical_attribute_map(const XmlNode& element) {
  std::map<std::string, std::string> out;
  walk(element, "", out);
  return out;
}

std::uint64_t canonical_hash(const XmlNode& element) {
  auto map = canonical_attribute_map(element);
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1F;
    h *= 1099511628211ull;
  };
  mix(element.name);
  for (const auto& [k, v] : map) {
    mix(k);
    mix(v);
  }
  return h;
}

}  // namespace figforge::xml
