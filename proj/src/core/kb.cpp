#include "core/kb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/http_client.hpp"

namespace figforge::kb {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 24) & 0xFF);
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, size_t& pos) {
  if (pos + 4 > b.size()) throw Error("BAD_INDEX", "index file truncated");
  std::uint32_t v = b[pos] | (b[pos + 1] << 8) | (b[pos + 2] << 16) |
                    (static_cast<std::uint32_t>(b[pos + 3]) << 24);
  pos += 4;
  return v;
}

}  // namespace

std::vector<float> HashEmbedder::embed(const std::string& text) {
  std::vector<float> v(dim_, 0.0f);
  std::istringstream ss(text);
  std::string token;
  bool any = false;
  while (ss >> token) {
    for (auto& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::uint64_t h = fnv1a(token);
    int slot = static_cast<int>(h % static_cast<std::uint64_t>(dim_));
    float sign = ((h >> 7) & 1) ? -1.0f : 1.0f;
    v[slot] += sign;
    any = true;
  }
  if (!any) return v;  // zero vector for empty text
  double norm = 0;
  for (float x : v) norm += static_cast<double>(x) * x;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (auto& x : v) x = static_cast<float>(x / norm);
  }
  return v;
}

HttpEmbedder::HttpEmbedder(std::string base_url, std::string model, int dim,
                           std::string token_env)
    : base_url_(std::move(base_url)), model_(std::move(model)), dim_(dim),
      token_env_(std::move(token_env)) {}

std::vector<float> HttpEmbedder::embed(const std::string& text) {
  nlohmann::json body;
  body["model"] = model_;
  body["input"] = nlohmann::json::array({text});
  const char* token = std::getenv(token_env_.c_str());
  std::string response = http::post_json(base_url_, "/v1/embeddings", body.dump(),
                                         token ? token : "");
  nlohmann::json doc = nlohmann::json::parse(response);
  if (!doc.contains("data") || !doc["data"].is_array() || doc["data"].empty()) {
    throw Error("EMBED_FAILURE", "embedding endpoint returned no data");
  }
  std::vector<float> v = doc["data"][0]["embedding"].get<std::vector<float>>();
  if (static_cast<int>(v.size()) != dim_) {
    throw Error("DIM_MISMATCH", "endpoint returned dimension " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(dim_));
  }
  return v;
}

VectorIndex build_index(const std::vector<KbRecord>& records, Embedder& embedder,
                        const std::string& name) {
  if (records.empty()) throw Error("EMPTY_KB", "build_index requires at least one record");
  if (name != "caption" && name != "hybrid") {
    throw Error("BAD_INDEX_NAME", "index name must be 'caption' or 'hybrid'");
  }
  VectorIndex index;
  index.name = name;
  index.dim = embedder.dim();
  for (const auto& r : records) {
    const std::string& text =
        name == "caption" ? r.caption : (r.description.empty() ? r.caption : r.description);
    std::vector<float> v;
    try {
      v = embedder.embed(text);
    } catch (const Error& e) {
      throw Error(e.code(), r.id, "record '" + r.id + "': " + e.what());
    }
    if (static_cast<int>(v.size()) != index.dim) {
      throw Error("DIM_MISMATCH", r.id, "record '" + r.id + "' embedded to wrong dimension");
    }
    index.entries.emplace_back(r.id, std::move(v));
  }
  return index;
}

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;  // zero vectors score 0 against everything
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::pair<std::string, double>> query(const VectorIndex& index,
                                                  const std::string& text, int k,
                                                  Embedder& embedder) {
  if (k < 1) throw Error("BAD_K", "query requires k >= 1");
  std::vector<float> qv = embedder.embed(text);
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(index.entries.size());
  for (const auto& [id, v] : index.entries) {
    scored.emplace_back(id, cosine(qv, v));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(scored.size()) > k) scored.resize(k);
  return scored;
}

std::string select_index(const std::string& query_text, int caption_token_limit) {
  std::istringstream ss(query_text);
  std::string token;
  int count = 0;
  while (ss >> token) ++count;
  return count <= caption_token_limit ? "caption" : "hybrid";
}

std::vector<KbRecord> ingest_text(const std::string& jsonl_text) {
  std::vector<KbRecord> records;
  std::istringstream ss(jsonl_text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> seen;
  while (std::getline(ss, line)) {
    ++line_no;
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("KB_PARSE", "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() ||
        !doc.contains("caption") || !doc["caption"].is_string()) {
      throw Error("KB_PARSE", "line " + std::to_string(line_no) +
                                  ": records need string fields 'id' and 'caption'");
    }
    KbRecord r;
    r.id = doc["id"].get<std::string>();
    r.caption = doc["caption"].get<std::string>();
    if (r.id.empty() || r.caption.empty()) {
      throw Error("KB_PARSE", "line " + std::to_string(line_no) + ": id and caption must be non-empty");
    }
    if (doc.contains("figure_ref") && doc["figure_ref"].is_string())
      r.figure_ref = doc["figure_ref"].get<std::string>();
    if (doc.contains("description") && doc["description"].is_string())
      r.description = doc["description"].get<std::string>();
    if (doc.contains("venue") && doc["venue"].is_string())
      r.venue = doc["venue"].get<std::string>();
    if (std::find(seen.begin(), seen.end(), r.id) != seen.end()) {
      throw Error("DUPLICATE_ID", r.id,
                  "line " + std::to_string(line_no) + ": duplicate record id '" + r.id + "'");
    }
    seen.push_back(r.id);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<KbRecord> ingest(const std::string& jsonl_path) {
  std::ifstream f(jsonl_path, std::ios::binary);
  if (!f) throw Error("IO", "cannot open KB file '" + jsonl_path + "'");
  std::stringstream buffer;
  buffer << f.rdbuf();
  return ingest_text(buffer.str());
}

void save_index(const VectorIndex& index, const std::string& path) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'F', 'F', 'V', 'I'});
  put_u32(out, 1);  // version
  put_u32(out, static_cast<std::uint32_t>(index.name.size()));
  out.insert(out.end(), index.name.begin(), index.name.end());
  put_u32(out, static_cast<std::uint32_t>(index.dim));
  put_u32(out, static_cast<std::uint32_t>(index.entries.size()));
  for (const auto& [id, v] : index.entries) {
    put_u32(out, static_cast<std::uint32_t>(id.size()));
    out.insert(out.end(), id.begin(), id.end());
    for (float x : v) {
      std::uint32_t bits;
      std::memcpy(&bits, &x, 4);
      put_u32(out, bits);
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("IO", "cannot write index file '" + path + "'");
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

VectorIndex load_index(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("IO", "cannot open index file '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 8 || bytes[0] != 'F' || bytes[1] != 'F' || bytes[2] != 'V' ||
      bytes[3] != 'I') {
    throw Error("BAD_INDEX", "'" + path + "' is not an index file");
  }
  size_t pos = 4;
  std::uint32_t version = get_u32(bytes, pos);
  if (version != 1) throw Error("BAD_INDEX", "unsupported index version");
  std::uint32_t name_len = get_u32(bytes, pos);
  if (pos + name_len > bytes.size()) throw Error("BAD_INDEX", "index file truncated");
  VectorIndex index;
  index.name = std::string(bytes.begin() + pos, bytes.begin() + pos + name_len);
  pos += name_len;
  index.dim = static_cast<int>(get_u32(bytes, pos));
  std::uint32_t count = get_u32(bytes, pos);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t id_len = get_u32(bytes, pos);
    if (pos + id_len > bytes.size()) throw Error("BAD_INDEX", "index file truncated");
    std::string id(bytes.begin() + pos, bytes.begin() + pos + id_len);
    pos += id_len;
    std::vector<float> v(index.dim);
    for (int d = 0; d < index.dim; ++d) {
      std::uint32_t bits = get_u32(bytes, pos);
      std::memcpy(&v[d], &bits, 4);
    }
    index.entries.emplace_back(std::move(id), std::move(v));
  }
  return index;
}

}  // namespace figforge::kb
