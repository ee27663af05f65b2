#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rspd {

std::string toolkit_version();

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Fingerprint of a JSON value over its canonical (sorted-key, compact) serialization.
std::string json_fingerprint(const nlohmann::json& j);

struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string version = toolkit_version();
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
  /// Fingerprint over everything except `outputs`, so it can be embedded in each output.
  std::string fingerprint() const;
};

}  // namespace rspd
