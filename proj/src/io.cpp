#include "spectralforge/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "spectralforge/error.hpp"

namespace sforge {

namespace {

constexpr std::string_view kMagic = "spectralforge-graph v1 ";

std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty() ||
      (tok.size() > 1 && tok[0] == '0'))
    fail(Errc::parse, "line " + std::to_string(line) + ": bad integer '" + std::string(tok) + "'");
  return x;
}

// Splits "<a> <b>" strictly on one space.
std::pair<std::uint64_t, std::uint64_t> parse_pair(std::string_view s, std::size_t line) {
  const auto sp = s.find(' ');
  if (sp == std::string_view::npos)
    fail(Errc::parse, "line " + std::to_string(line) + ": expected two fields");
  return {parse_uint(s.substr(0, sp), line), parse_uint(s.substr(sp + 1), line)};
}

}  // namespace

std::string serialize_graph(const Graph& g) {
  std::string out;
  out.reserve(32 + g.edge_count() * 12);
  out += kMagic;
  out += std::to_string(g.vertex_count());
  out += ' ';
  out += std::to_string(g.edge_count());
  out += '\n';
  for (Edge e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      fail(Errc::parse, "line " + std::to_string(line_no + 1) + ": missing LF terminator");
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    return true;
  };
  std::string_view line;
  if (!next_line(line) || !line.starts_with(kMagic)) fail(Errc::parse, "malformed header");
  auto [n, m] = parse_pair(line.substr(kMagic.size()), line_no);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (next_line(line)) {
    auto [u, v] = parse_pair(line, line_no);
    if (u >= v) fail(Errc::parse, "line " + std::to_string(line_no) + ": requires u < v");
    if (v >= n) fail(Errc::out_of_range, "line " + std::to_string(line_no) + ": index out of range");
    Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!edges.empty()) {
      if (e == edges.back()) fail(Errc::duplicate_edge, "line " + std::to_string(line_no) + ": duplicate edge");
      if (e < edges.back()) fail(Errc::parse, "line " + std::to_string(line_no) + ": rows not sorted");
    }
    edges.push_back(e);
  }
  if (edges.size() != m) fail(Errc::parse, "header edge count does not match rows");
  return Graph::from_edges(n, edges);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_graph_file(const std::filesystem::path& path) { return parse_graph(read_file(path)); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(Errc::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(Errc::io, "rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace sforge
