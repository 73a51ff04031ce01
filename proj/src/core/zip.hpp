#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace figforge::zip {

struct Entry {
  std::string name;
  std::vector<std::uint8_t> data;
};

struct Archive {
  std::vector<Entry> entries;  // write order is preserved bit-exactly

  const Entry* find(const std::string& name) const;
  void set(const std::string& name, std::vector<std::uint8_t> data);
  bool remove(const std::string& name);
};

// Deterministic writer: entries stored uncompressed in list order with
// DOS timestamps fixed to 1980-01-01, so identical archives byte-match
// across runs and platforms.
std::vector<std::uint8_t> write(const Archive& archive);

// Reads stored and deflated entries; CRCs are verified. Throws
// Error("BAD_ZIP", ...) on anything truncated or inconsistent.
Archive read(const std::vector<std::uint8_t>& bytes);

}  // namespace figforge::zip
