#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "spectralforge/graph.hpp"

namespace sforge {

std::string serialize_graph(const Graph& g);
Graph parse_graph(std::string_view text);

Graph read_graph_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Shortest round-trip decimal for a double ("%.17g" trimmed).
std::string format_double(double x);

}  // namespace sforge
