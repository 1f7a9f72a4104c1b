#pragma once

#include <string>

#include <json.hpp>

#include "coverlab/core_model.hpp"
#include "coverlab/crt_bridge.hpp"

namespace coverlab {

// Instance wire format (bit-exact contract shared by all tools):
//   {"sizes":[s1,...,sn],"hyperplanes":[{"fixed":[[j,v],...]},...]}
// with 1-based coordinate indices j, fixed lists sorted by j, no duplicate
// j within one hyperplane. Parsing validates all of that and throws
// InvalidInputError on any violation.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

Instance parse_instance(const std::string& text);

// AP system wire format: {"progressions":[{"a":0,"d":2},...]}.
// Residues are normalized to 0 <= a < d while parsing.
APSystem apsystem_from_json(const nlohmann::json& doc);
nlohmann::json apsystem_to_json(const APSystem& sys);

APSystem parse_apsystem(const std::string& text);

// Reads a whole file; throws InvalidInputError when unreadable.
std::string read_file(const std::string& path);

nlohmann::json parse_json_file(const std::string& path);

}  // namespace coverlab
