#include "spectralforge/construct/join.hpp"

#include <algorithm>
#include <functional>

#include "spectralforge/error.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/structure.hpp"

namespace sforge {

ChainJoin chain_join(std::span<const Graph> parts, std::size_t d) {
  if (parts.empty()) fail(Errc::invalid_argument, "chain_join needs at least one part");
  ChainJoin out;
  Graph acc = empty_graph(0);
  std::vector<Vertex> lo(parts.size()), hi(parts.size());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const Graph& p = parts[j];
    if (p.max_degree() > d) fail(Errc::degree_exceeds, "part " + std::to_string(j) + " exceeds d");
    std::vector<Vertex> low;
    for (Vertex v = 0; v < p.vertex_count(); ++v)
      if (p.degree(v) < d) low.push_back(v);
    const bool left = j > 0, right = j + 1 < parts.size();
    const std::size_t need = static_cast<std::size_t>(left) + static_cast<std::size_t>(right);
    if (low.size() < need)
      fail(Errc::no_low_degree_vertex, "part " + std::to_string(j) + " lacks low-degree vertices");
    out.offsets.push_back(static_cast<Vertex>(acc.vertex_count()));
    if (need > 0) {
      lo[j] = low.front() + out.offsets[j];
      hi[j] = low.back() + out.offsets[j];
      // A single low-degree vertex may serve both sides when its slack is 2.
      if (need == 2 && low.size() == 1 && p.degree(low.front()) + 2 > d)
        fail(Errc::no_low_degree_vertex, "part " + std::to_string(j) + " lacks low-degree vertices");
    }
    acc = disjoint_union(acc, p);
  }
  for (std::size_t j = 0; j + 1 < parts.size(); ++j)
    out.join_edges.push_back(Edge::make(hi[j], lo[j + 1]));
  out.graph = add_edges(acc, out.join_edges);
  return out;
}

JoinDriftReport verify_join_drift(std::span<const Graph> parts, const ChainJoin& joined,
                                  std::size_t d, std::size_t k, const SolverConfig& cfg) {
  JoinDriftReport rep;
  rep.joins = joined.join_edges.size();
  Length g = kInfinite;
  std::size_t total = 0;
  std::vector<double> merged;
  for (const Graph& p : parts) {
    g = std::min(g, girth(p));
    total += p.vertex_count();
    const std::size_t take = std::min(k, p.vertex_count());
    const Spectrum sp = spectrum(p, take, 0, cfg, false);
    merged.insert(merged.end(), sp.eigenvalues.begin(), sp.eigenvalues.end());
  }
  std::sort(merged.begin(), merged.end(), std::greater<>());
  rep.r = g == kInfinite ? total : (g - 1) / 2;
  const std::size_t kk = std::min({k, merged.size(), joined.graph.vertex_count()});
  const Spectrum top = spectrum(joined.graph, kk, 0, cfg, false);
  const double thr = ramanujan_bound(d);
  for (std::size_t i = 0; i < kk; ++i) {
    JoinDriftEntry e;
    e.index = i + 1;
    e.merged = merged[i];
    e.joined = top.eigenvalues[i];
    e.bound = static_cast<double>(rep.joins) * 2.0 * static_cast<double>(i + 1) /
              static_cast<double>(rep.r + 1);
    e.applicable = e.merged >= thr - kGuard;
    e.pass = !e.applicable || std::abs(e.joined - e.merged) <= e.bound + kGuard;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace sforge
