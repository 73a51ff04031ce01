#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace figforge::kb {

struct KbRecord {
  std::string id;
  std::string figure_ref;   // stored by reference only; never embedded
  std::string caption;
  std::string description;  // may be empty; hybrid falls back to caption
  std::string venue;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual int dim() const = 0;
  virtual std::vector<float> embed(const std::string& text) = 0;
};

// Deterministic offline embedder: hashed bag-of-words projected to a
// fixed dimension, L2-normalized. Empty text maps to the zero vector.
class HashEmbedder : public Embedder {
 public:
  explicit HashEmbedder(int dim = 64) : dim_(dim) {}
  int dim() const override { return dim_; }
  std::vector<float> embed(const std::string& text) override;

 private:
  int dim_;
};

// Wire-level client for an HTTP embedding endpoint: POST {model, input}
// with a bearer token read from token_env. Never used offline.
class HttpEmbedder : public Embedder {
 public:
  HttpEmbedder(std::string base_url, std::string model, int dim,
               std::string token_env = "FIGFORGE_EMBED_TOKEN");
  int dim() const override { return dim_; }
  std::vector<float> embed(const std::string& text) override;

 private:
  std::string base_url_;
  std::string model_;
  int dim_;
  std::string token_env_;
};

struct VectorIndex {
  std::string name;  // "caption" or "hybrid"
  int dim = 0;
  std::vector<std::pair<std::string, std::vector<float>>> entries;  // record id, vector
};

// caption index embeds captions; hybrid embeds descriptions with caption
// fallback when the description is empty.
VectorIndex build_index(const std::vector<KbRecord>& records, Embedder& embedder,
                        const std::string& name);

// Top-k by cosine similarity, descending, ties broken by ascending record
// id; k beyond the index size returns everything.
std::vector<std::pair<std::string, double>> query(const VectorIndex& index,
                                                  const std::string& text, int k,
                                                  Embedder& embedder);

// Short keyword-like queries hit the caption index, longer prose the
// hybrid one. The token threshold is inclusive.
std::string select_index(const std::string& query_text, int caption_token_limit = 12);

// JSONL, one record per line, fields {id, figure_ref, caption,
// description, venue}. Duplicate ids and malformed lines are errors with
// line numbers.
std::vector<KbRecord> ingest(const std::string& jsonl_path);
std::vector<KbRecord> ingest_text(const std::string& jsonl_text);

void save_index(const VectorIndex& index, const std::string& path);
VectorIndex load_index(const std::string& path);

double cosine(const std::vector<float>& a, const std::vector<float>& b);

}  // namespace figforge::kb
