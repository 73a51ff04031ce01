#include "core/zip.hpp"

#include <zlib.h>

#include <cstring>

#include "core/error.hpp"

namespace figforge::zip {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEocdSig = 0x06054b50;
// 1980-01-01, the DOS epoch.
constexpr std::uint16_t kDosDate = 0x0021;
constexpr std::uint16_t kDosTime = 0;

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 24) & 0xFF);
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint16_t u16(size_t off) const {
    check(off, 2);
    return static_cast<std::uint16_t>(bytes_[off] | (bytes_[off + 1] << 8));
  }
  std::uint32_t u32(size_t off) const {
    check(off, 4);
    return static_cast<std::uint32_t>(bytes_[off]) | (static_cast<std::uint32_t>(bytes_[off + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes_[off + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes_[off + 3]) << 24);
  }
  std::string str(size_t off, size_t len) const {
    check(off, len);
    return std::string(reinterpret_cast<const char*>(bytes_.data() + off), len);
  }
  void check(size_t off, size_t len) const {
    if (off + len > bytes_.size()) throw Error("BAD_ZIP", "archive truncated");
  }
  size_t size() const { return bytes_.size(); }
  const std::uint8_t* data() const { return bytes_.data(); }

 private:
  const std::vector<std::uint8_t>& bytes_;
};

std::vector<std::uint8_t> inflate_raw(const std::uint8_t* src, size_t src_len, size_t out_len) {
  std::vector<std::uint8_t> out(out_len);
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw Error("BAD_ZIP", "inflate init failed");
  zs.next_in = const_cast<Bytef*>(src);
  zs.avail_in = static_cast<uInt>(src_len);
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != out_len) {
    throw Error("BAD_ZIP", "deflated entry is corrupt");
  }
  return out;
}

}  // namespace

const Entry* Archive::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

void Archive::set(const std::string& name, std::vector<std::uint8_t> data) {
  for (auto& e : entries) {
    if (e.name == name) {
      e.data = std::move(data);
      return;
    }
  }
  entries.push_back(Entry{name, std::move(data)});
}

bool Archive::remove(const std::string& name) {
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    if (it->name == name) {
      entries.erase(it);
      return true;
    }
  }
  return false;
}

std::vector<std::uint8_t> write(const Archive& archive) {
  std::vector<std::uint8_t> out;
  struct CentralRecord {
    std::string name;
    std::uint32_t crc;
    std::uint32_t size;
    std::uint32_t offset;
  };
  std::vector<CentralRecord> central;

  for (const auto& e : archive.entries) {
    std::uint32_t crc = static_cast<std::uint32_t>(
        crc32(0L, e.data.empty() ? Z_NULL : e.data.data(), static_cast<uInt>(e.data.size())));
    std::uint32_t offset = static_cast<std::uint32_t>(out.size());
    put32(out, kLocalSig);
    put16(out, 20);        // version needed
    put16(out, 0);         // flags
    put16(out, 0);         // method: stored
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, crc);
    put32(out, static_cast<std::uint32_t>(e.data.size()));  // compressed
    put32(out, static_cast<std::uint32_t>(e.data.size()));  // uncompressed
    put16(out, static_cast<std::uint16_t>(e.name.size()));
    put16(out, 0);  // extra len
    out.insert(out.end(), e.name.begin(), e.name.end());
    out.insert(out.end(), e.data.begin(), e.data.end());
    central.push_back({e.name, crc, static_cast<std::uint32_t>(e.data.size()), offset});
  }

  std::uint32_t central_start = static_cast<std::uint32_t>(out.size());
  for (const auto& c : central) {
    put32(out, kCentralSig);
    put16(out, 20);  // version made by
    put16(out, 20);  // version needed
    put16(out, 0);
    put16(out, 0);
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, c.crc);
    put32(out, c.size);
    put32(out, c.size);
    put16(out, static_cast<std::uint16_t>(c.name.size()));
    put16(out, 0);  // extra
    put16(out, 0);  // comment
    put16(out, 0);  // disk
    put16(out, 0);  // internal attrs
    put32(out, 0);  // external attrs
    put32(out, c.offset);
    out.insert(out.end(), c.name.begin(), c.name.end());
  }
  std::uint32_t central_size = static_cast<std::uint32_t>(out.size()) - central_start;

  put32(out, kEocdSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(central.size()));
  put16(out, static_cast<std::uint16_t>(central.size()));
  put32(out, central_size);
  put32(out, central_start);
  put16(out, 0);  // comment length
  return out;
}

Archive read(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  if (bytes.size() < 22) throw Error("BAD_ZIP", "not a zip archive (too short)");

  // find EOCD, scanning back over a possible comment
  size_t eocd = std::string::npos;
  size_t scan_start = bytes.size() - 22;
  size_t scan_limit = bytes.size() > 22 + 0xFFFF ? bytes.size() - 22 - 0xFFFF : 0;
  for (size_t i = scan_start + 1; i-- > scan_limit;) {
    if (r.u32(i) == kEocdSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string::npos) throw Error("BAD_ZIP", "end-of-central-directory not found");

  std::uint16_t count = r.u16(eocd + 10);
  std::uint32_t central_off = r.u32(eocd + 16);

  Archive archive;
  size_t pos = central_off;
  for (int i = 0; i < count; ++i) {
    if (r.u32(pos) != kCentralSig) throw Error("BAD_ZIP", "central directory is corrupt");
    std::uint16_t method = r.u16(pos + 10);
    std::uint32_t crc = r.u32(pos + 16);
    std::uint32_t csize = r.u32(pos + 20);
    std::uint32_t usize = r.u32(pos + 24);
    std::uint16_t name_len = r.u16(pos + 28);
    std::uint16_t extra_len = r.u16(pos + 30);
    std::uint16_t comment_len = r.u16(pos + 32);
    std::uint32_t local_off = r.u32(pos + 42);
    std::string name = r.str(pos + 46, name_len);
    pos += 46 + name_len + extra_len + comment_len;

    if (r.u32(local_off) != kLocalSig) throw Error("BAD_ZIP", "local header missing for " + name);
    std::uint16_t lname = r.u16(local_off + 26);
    std::uint16_t lextra = r.u16(local_off + 28);
    size_t data_off = local_off + 30 + lname + lextra;
    r.check(data_off, csize);

    std::vector<std::uint8_t> data;
    if (method == 0) {
      data.assign(bytes.begin() + data_off, bytes.begin() + data_off + csize);
    } else if (method == 8) {
      data = inflate_raw(r.data() + data_off, csize, usize);
    } else {
      throw Error("BAD_ZIP", "unsupported compression method for " + name);
    }
    std::uint32_t actual = static_cast<std::uint32_t>(
        crc32(0L, data.empty() ? Z_NULL : data.data(), static_cast<uInt>(data.size())));
    if (actual != crc) throw Error("BAD_ZIP", "CRC mismatch for " + name);
    archive.entries.push_back(Entry{std::move(name), std::move(data)});
  }
  return archive;
}

}  // namespace figforge::zip
