#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectralforge/graph.hpp"
#include "spectralforge/verify.hpp"

namespace forge {

using json = nlohmann::ordered_json;

struct Report {
  std::string command;
  json config = json::object();
  std::vector<sforge::Certificate> certificates;
  json results = json::object();
  std::vector<std::string> artifacts;
  double wall_time = -1.0;  // emitted only when set

  void certify(std::string name, double value, double bound, bool pass, std::string detail = {});
  bool pass() const;
  json to_json() const;
};

// Writes name under dir via temp + rename and records it as an artifact.
void emit(Report& rep, const std::filesystem::path& dir, const std::string& name,
          const std::string& content);

json length_json(sforge::Length x);

}  // namespace forge
