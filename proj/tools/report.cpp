#include "report.hpp"

#include <algorithm>

#include "spectralforge/io.hpp"

namespace forge {

void Report::certify(std::string name, double value, double bound, bool pass, std::string detail) {
  certificates.push_back({std::move(name), value, bound, pass, std::move(detail)});
}

bool Report::pass() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const sforge::Certificate& c) { return c.pass; });
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["config"] = config;
  json certs = json::array();
  for (const auto& c : certificates) {
    json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["bound"] = c.bound;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    certs.push_back(std::move(e));
  }
  j["certificates"] = std::move(certs);
  j["pass"] = pass();
  j["results"] = results;
  j["artifacts"] = artifacts;
  if (wall_time >= 0) j["wall_time"] = wall_time;
  return j;
}

void emit(Report& rep, const std::filesystem::path& dir, const std::string& name,
          const std::string& content) {
  std::filesystem::create_directories(dir);
  sforge::write_file_atomic(dir / name, content);
  if (std::find(rep.artifacts.begin(), rep.artifacts.end(), name) == rep.artifacts.end())
    rep.artifacts.push_back(name);
}

json length_json(sforge::Length x) {
  if (x == sforge::kInfinite) return nullptr;
  return x;
}

}  // namespace forge
