#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "core/xml.hpp"

namespace figforge::xml {

// Flattens an element subtree into an order-insensitive attribute map:
// keys are slash-joined paths with per-name sibling ordinals (first
// occurrence unsuffixed), values are whitespace-trimmed with integers
// normalized. Semantically empty containers contribute nothing.
std::map<std::string, std::string> canonical_attribute_map(const XmlNode& element);

// FNV-1a over the serialized canonical map; stable across attribute
// reordering and whitespace noise.
std::uint64_t canonical_hash(const XmlNode& element);

std::string normalize_scalar(const std::string& value);

}  // namespace figforge::xml
