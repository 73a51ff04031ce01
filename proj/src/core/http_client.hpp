#pragma once

#include <string>

namespace figforge::http {

// Seam between wire-level clients and the network. Tests swap in
// instrumented transports; offline mode installs one that rejects every
// call, which is how the zero-network guarantee is enforced.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string post(const std::string& base_url, const std::string& path,
                           const std::string& json_body, const std::string& bearer_token) = 0;
};

Transport& transport();
// Overrides the process-wide transport; nullptr restores the real one.
void set_transport(Transport* t);

// Throws Error("OFFLINE") on any use.
Transport& forbidden_transport();

std::string post_json(const std::string& base_url, const std::string& path,
                      const std::string& json_body, const std::string& bearer_token);

}  // namespace figforge::http
