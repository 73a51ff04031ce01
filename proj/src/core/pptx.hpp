#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/scene.hpp"
#include "core/xml.hpp"
#include "core/zip.hpp"

namespace figforge::pptx {

// Element present in an archive but not authored by emit(); preserved as
// an opaque record so diffs and re-emits never lose human edits.
struct ForeignRecord {
  std::string id;            // element name when present, else synthetic
  std::string element_type;  // tag, e.g. "p:sp"
  std::uint64_t attr_hash;   // canonicalized-attribute hash
};

struct ParsedArchive {
  SceneGraph scene;
  std::vector<ForeignRecord> foreign;
};

struct ArchiveReport {
  bool well_formed = true;
  std::vector<std::string> notes;  // human-readable findings for well_formed failures
  std::vector<std::string> unresolved_rels;
  std::vector<std::string> missing_content_types;
  std::vector<std::string> dangling_connection_refs;

  bool valid() const {
    return well_formed && unresolved_rels.empty() && missing_content_types.empty() &&
           dangling_connection_refs.empty();
  }
};

// Serializes a routed scene into an editable OpenXML presentation archive.
// Deterministic: fixed part order, fixed zip metadata, pure function of
// the scene. Preconditions: validate(scene) is empty, every connector has
// ports and every elbow has waypoints (run route_all first).
std::vector<std::uint8_t> emit(const SceneGraph& scene);

// Reconstructs the scene from an archive. Elements authored by emit()
// round-trip losslessly; anything else lands in the foreign ledger.
ParsedArchive parse(const std::vector<std::uint8_t>& bytes);

ArchiveReport validate_archive(const std::vector<std::uint8_t>& bytes);

// Shared helpers for the diff module and archive surgery in tests.
std::string locate_slide_part(const zip::Archive& archive);  // throws when absent
xml::XmlNode load_slide_xml(const std::vector<std::uint8_t>& bytes);

// Port <-> OpenXML connection-site index for the preset geometries this
// back-end emits (documented in docs/openxml-map.md).
int connection_index(Port p);
Port port_from_connection_index(int idx);

}  // namespace figforge::pptx
