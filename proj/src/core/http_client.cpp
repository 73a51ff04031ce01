#include "core/http_client.hpp"

#include <httplib.h>

#include "core/error.hpp"

namespace figforge::http {

namespace {

class RealTransport : public Transport {
 public:
  std::string post(const std::string& base_url, const std::string& path,
                   const std::string& json_body, const std::string& bearer_token) override {
    httplib::Client client(base_url);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!bearer_token.empty()) {
      headers.emplace("Authorization", "Bearer " + bearer_token);
    }
    auto res = client.Post(path, headers, json_body, "application/json");
    if (!res) {
      throw Error("TRANSPORT", "POST " + base_url + path + " failed: " +
                                   httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw Error("TRANSPORT", "POST " + base_url + path + " returned status " +
                                   std::to_string(res->status));
    }
    return res->body;
  }
};

class ForbiddenTransport : public Transport {
 public:
  std::string post(const std::string& base_url, const std::string& path, const std::string&,
                   const std::string&) override {
    throw Error("OFFLINE", "network call to " + base_url + path + " blocked in offline mode");
  }
};

Transport* g_override = nullptr;

}  // namespace

Transport& transport() {
  if (g_override) return *g_override;
  static RealTransport real;
  return real;
}

void set_transport(Transport* t) { g_override = t; }

Transport& forbidden_transport() {
  static ForbiddenTransport forbidden;
  return forbidden;
}

std::string post_json(const std::string& base_url, const std::string& path,
                      const std::string& json_body, const std::string& bearer_token) {
  return transport().post(base_url, path, json_body, bearer_token);
}

}  // namespace figforge::http
