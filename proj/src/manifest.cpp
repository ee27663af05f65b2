#include "rspd/manifest.hpp"

#include <cstdio>

namespace rspd {

std::string toolkit_version() { return RSPD_VERSION; }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string json_fingerprint(const nlohmann::json& j) { return fnv1a_hex(j.dump()); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j{{"subcommand", subcommand},
                   {"parameters", parameters},
                   {"seed", seed},
                   {"version", version},
                   {"outputs", outputs}};
  j["fingerprint"] = fingerprint();
  return j;
}

std::string RunManifest::fingerprint() const {
  return json_fingerprint(
      {{"subcommand", subcommand}, {"parameters", parameters}, {"seed", seed}, {"version", version}});
}

}  // namespace rspd
