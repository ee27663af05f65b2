#include "rspd/design_io.hpp"

#include <cmath>
#include <fstream>

namespace rspd {

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v) && std::nearbyint(v) == v && std::abs(v) < 1e15)
    return static_cast<long long>(v);
  return v;
}

std::size_t get_count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
    throw FormatError(std::string("design field '") + key + "' must be a positive integer");
  return j[key].get<std::size_t>();
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto arr = nlohmann::json::array();
  for (const auto& v : m.entries()) arr.push_back({number(v.real()), number(v.imag())});
  return arr;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols)
    throw FormatError("matrix must be an array of " + std::to_string(rows * cols) + " [re, im] pairs");
  std::vector<cplx> data;
  data.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw FormatError("matrix entry must be [re, im]");
    data.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(rows, cols, std::move(data));
}

nlohmann::json design_to_json(const Design& d) {
  nlohmann::json j;
  j["n"] = d.n_symbols();
  j["k"] = d.n_relays();
  j["t"] = d.n_slots();
  j["p"] = matrix_to_json(d.precoder_p());
  j["q"] = matrix_to_json(d.precoder_q());
  j["a"] = nlohmann::json::array();
  j["b"] = nlohmann::json::array();
  for (std::size_t k = 0; k < d.n_relays(); ++k) {
    j["a"].push_back(matrix_to_json(d.relay_a(k)));
    j["b"].push_back(matrix_to_json(d.relay_b(k)));
  }
  return j;
}

Design design_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("design document must be a JSON object");
  const std::size_t n = get_count(j, "n"), k = get_count(j, "k"), t = get_count(j, "t");
  for (const char* key : {"p", "q", "a", "b"})
    if (!j.contains(key)) throw FormatError(std::string("design field '") + key + "' missing");
  if (!j["a"].is_array() || !j["b"].is_array() || j["a"].size() != k || j["b"].size() != k)
    throw FormatError("fields 'a' and 'b' must hold K matrices each");
  ComplexMatrix p = matrix_from_json(j["p"], n, n);
  ComplexMatrix q = matrix_from_json(j["q"], n, n);
  std::vector<ComplexMatrix> a, b;
  for (std::size_t r = 0; r < k; ++r) {
    a.push_back(matrix_from_json(j["a"][r], n, t));
    b.push_back(matrix_from_json(j["b"][r], n, t));
  }
  try {
    return Design::unvalidated(std::move(p), std::move(q), std::move(a), std::move(b));
  } catch (const DesignError& e) {
    throw FormatError(e.what());
  }
}

Design load_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open design file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("design file " + path.string() + ": " + e.what());
  }
  return design_from_json(j);
}

void save_design(const Design& d, const std::filesystem::path& path, const nlohmann::json& manifest) {
  nlohmann::json j = design_to_json(d);
  if (!manifest.is_null()) j["manifest"] = manifest;
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace rspd
