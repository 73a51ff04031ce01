#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace figforge::diff {

enum class EditKind { Modify, Add, Delete };
std::string to_string(EditKind k);

struct EditOp {
  EditKind kind;
  std::string element_id;                  // stable id or synthetic fallback key
  std::vector<std::string> changed_attrs;  // Modify only
};

struct EditDistanceReport {
  std::vector<EditOp> ops;  // Delete, Modify, Add; then by id
  int distance = 0;         // |ops|
};

// Structural diff of the slide parts of two archives, matched by stable
// element id (the element-name attribute) with a fallback key for id-less
// foreign elements. Repeated attribute edits on one element aggregate to
// a single Modify. Theme/master parts are out of scope by design.
EditDistanceReport edit_distance(const std::vector<std::uint8_t>& before,
                                 const std::vector<std::uint8_t>& after);

// Order-insensitive attribute map of one XML fragment: names sorted,
// numeric values normalized, semantically empty containers dropped.
std::map<std::string, std::string> canonicalize_element(const std::string& xml_fragment);

// One line per op; "distance: N" trailer. Deterministic.
std::string diff_report(const EditDistanceReport& report);
std::string diff_report_json(const EditDistanceReport& report);

}  // namespace figforge::diff
