#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace figforge {

// Domain error with a machine-readable code. Codes double as the error
// signatures the experience ledger keys on, so keep them stable.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  Error(std::string code, std::string construct, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), construct_(std::move(construct)) {}

  const std::string& code() const { return code_; }
  // Offending construct, e.g. "linestyle@add_connector"; empty when n/a.
  const std::string& construct() const { return construct_; }

 private:
  std::string code_;
  std::string construct_;
};

}  // namespace figforge
