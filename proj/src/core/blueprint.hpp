#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/scene.hpp"

namespace figforge {

struct ParseError {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  std::string code;
  std::string construct;  // offending construct for experience distillation
  std::string message;

  std::string to_string() const;
};

struct ParseWarning {
  int line = 0;
  int col = 0;
  std::string message;
};

struct ParseResult {
  SceneGraph scene;
  std::vector<ParseError> errors;
  std::vector<ParseWarning> warnings;
  bool ok() const { return errors.empty(); }
};

// Compiles a blueprint document (UTF-8 JSON: canvas + assets + ordered
// skill invocations) into a validated SceneGraph. Parameter names are
// strict: anything outside a skill's documented set is an UNKNOWN_PARAM
// error. extra_assets are pre-registered before ops run (used by the
// pipeline for generated icon libraries).
ParseResult parse_blueprint(const std::string& text,
                            const std::map<std::string, AssetRef>& extra_assets = {});

// Canonical deterministic text; parse_blueprint(serialize_blueprint(s))
// reconstructs s for every scene that validates. Throws INVALID_SCENE
// otherwise.
std::string serialize_blueprint(const SceneGraph& scene);

// Valid parameter names per skill, frozen in docs/dsl.md. Exposed so
// error messages and the experience ledger can name the full set.
const std::map<std::string, std::vector<std::string>>& skill_param_table();

}  // namespace figforge
