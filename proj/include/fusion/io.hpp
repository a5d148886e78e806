#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusion/ring.hpp"

namespace fusion {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ring record: {"rank": r, "dual": [1-based], "N": N[a][b][c], "name"?: str}.
inline nlohmann::json ring_to_json(const FusionRing& R, const std::optional<std::string>& name = {}) {
  const int r = R.rank();
  nlohmann::json n = nlohmann::json::array();
  for (int a = 0; a < r; ++a) {
    nlohmann::json plane = nlohmann::json::array();
    for (int b = 0; b < r; ++b) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < r; ++c) row.push_back(R.at0(a, b, c));
      plane.push_back(std::move(row));
    }
    n.push_back(std::move(plane));
  }
  nlohmann::json j = {{"rank", r}, {"dual", R.duals()}, {"N", std::move(n)}};
  if (name) j["name"] = *name;
  return j;
}

/// Parses one ring record. Throws structural_error on shape problems and
/// io_error on missing/mistyped fields.
inline FusionRing ring_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw io_error("ring record must be an object");
  for (const char* key : {"rank", "dual", "N"})
    if (!j.contains(key)) throw io_error(std::string("ring record lacks field '") + key + "'");
  try {
    const int rank = j.at("rank").get<int>();
    auto dual = j.at("dual").get<std::vector<int>>();
    auto nested = j.at("N").get<std::vector<std::vector<std::vector<int>>>>();
    if (static_cast<int>(nested.size()) != rank)
      throw structural_error("N has " + std::to_string(nested.size()) + " planes, rank is " +
                             std::to_string(rank));
    return FusionRing::from_nested(dual, nested);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("malformed ring record: ") + e.what());
  }
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << j.dump(1) << '\n';
  if (!out) throw io_error("write failed for " + path);
}

inline std::vector<FusionRing> read_catalog(const std::string& path) {
  const auto j = read_json_file(path);
  if (!j.is_array()) throw io_error(path + ": catalog must be an array");
  std::vector<FusionRing> out;
  out.reserve(j.size());
  for (const auto& rec : j) out.push_back(ring_from_json(rec));
  return out;
}

inline nlohmann::json catalog_to_json(const std::vector<FusionRing>& rings) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& R : rings) j.push_back(ring_to_json(R));
  return j;
}

}  // namespace fusion
