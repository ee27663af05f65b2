#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rspd/design.hpp"

namespace rspd {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrices are flat row-major arrays of [re, im] pairs; integral values are written as integers.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols);

/// {"n":N,"k":K,"t":T,"p":[...],"q":[...],"a":[K matrices],"b":[K matrices]}
nlohmann::json design_to_json(const Design& d);

/// Builds a validated Design when the relay structure holds and an unvalidated one otherwise,
/// so foreign codes can still be loaded and analysed. Throws FormatError on malformed input.
Design design_from_json(const nlohmann::json& j);

Design load_design(const std::filesystem::path& path);
void save_design(const Design& d, const std::filesystem::path& path, const nlohmann::json& manifest = {});

}  // namespace rspd
