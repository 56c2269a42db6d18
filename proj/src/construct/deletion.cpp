#include "spectralforge/construct/deletion.hpp"

#include <algorithm>
#include <cmath>

#include "spectralforge/error.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"
#include "spectralforge/walks.hpp"

namespace sforge {

std::size_t deletion_walk_length(std::size_t q, std::size_t cap) {
  std::size_t l = std::min(q / 2, cap);
  if (l % 2 != 0) --l;
  return std::max<std::size_t>(l, 2);
}

namespace {

// Leaves of the BFS tree from root; the root itself is never returned.
std::vector<Vertex> bfs_tree_leaves(const Graph& g, Vertex root) {
  const std::size_t n = g.vertex_count();
  std::vector<Length> dist(n, kInfinite);
  std::vector<std::uint8_t> has_child(n, 0);
  std::vector<Vertex> queue{root};
  dist[root] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Vertex u = queue[h];
    for (Vertex w : g.neighbors(u))
      if (dist[w] == kInfinite) {
        dist[w] = dist[u] + 1;
        has_child[u] = 1;
        queue.push_back(w);
      }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (v != root && dist[v] != kInfinite && !has_child[v]) out.push_back(v);
  return out;
}

BigInt total(const std::vector<BigInt>& xs) {
  BigInt t = 0;
  for (const auto& x : xs) t += x;
  return t;
}

}  // namespace

DeletionInterpolation deletion_interpolate(std::size_t n, std::size_t d, double target,
                                           const DeletionOptions& opt) {
  if (n % 2 != 0) fail(Errc::odd_vertex_count, "deletion interpolation needs even n");
  if (d < 2 || d >= n) fail(Errc::invalid_argument, "deletion interpolation: bad degree");
  const double thr = ramanujan_bound(d);
  if (target < thr - kGuard || target > static_cast<double>(d) + kGuard)
    fail(Errc::invalid_argument, "target must lie in [2 sqrt(d-1), d]");

  DeletionInterpolation out;
  GenerationPolicy pol;
  pol.seed = derive_seed(opt.seed, "start");
  pol.max_retries = opt.max_retries;
  pol.min_girth = opt.min_girth;
  pol.lambda2_ceiling = opt.start_ceiling.value_or(thr);
  pol.require_connected = opt.connected;
  pol.solver = opt.solver;
  Generated gen = generate_regular(n, d, pol);
  out.start = gen.graph;
  out.start_attempts = gen.attempts;

  Graph cur = out.start;
  std::vector<Vertex> labels(n);
  for (Vertex v = 0; v < n; ++v) labels[v] = v;
  std::vector<Graph> history{cur};
  std::vector<std::vector<Vertex>> label_history{labels};

  auto measure = [&](DeletionRecord& rec) {
    const Spectrum sp = spectrum(cur, std::min<std::size_t>(2, cur.vertex_count()), 0, opt.solver, false);
    rec.vertices = cur.vertex_count();
    rec.lambda1 = sp.eigenvalues[0];
    rec.lambda2 = sp.eigenvalues.size() > 1 ? sp.eigenvalues[1] : rec.lambda1;
    rec.low_degree = 0;
    for (Vertex v = 0; v < cur.vertex_count(); ++v)
      if (cur.degree(v) < d) ++rec.low_degree;
    rec.connected = is_connected(cur);
  };

  DeletionRecord first;
  measure(first);
  out.records.push_back(first);
  out.trace.steps.push_back({0, "start", first.lambda1, girth(cur), cur.vertex_count()});

  const Vertex root = 0;
  std::size_t step = 0;
  out.stop_reason = "target-crossed";
  while (out.records.back().lambda1 > target) {
    const std::size_t q = cur.vertex_count();
    if (q <= 2) {
      out.stop_reason = "graph-exhausted";
      break;
    }
    const std::size_t len = deletion_walk_length(q, opt.walk_cap);
    const auto counts = per_vertex_walk_counts(cur, len);
    std::vector<Vertex> pool;
    if (opt.connected) {
      // The root keeps its current label: deletions above it shift it down.
      const Vertex r = static_cast<Vertex>(
          std::lower_bound(labels.begin(), labels.end(), root) - labels.begin());
      pool = bfs_tree_leaves(cur, r);
    } else {
      pool.resize(q);
      for (Vertex v = 0; v < q; ++v) pool[v] = v;
    }
    if (pool.empty()) {
      out.stop_reason = "no-candidate";
      break;
    }
    // Fewest walks; pools are in label order so ties go to the smallest label.
    Vertex pick = pool.front();
    for (Vertex v : pool)
      if (counts[v] < counts[pick]) pick = v;

    const BigInt t_before = total(counts);
    Subgraph sub = delete_vertex(cur, pick);
    const Vertex removed = labels[pick];
    std::vector<Vertex> next_labels(sub.original.size());
    for (std::size_t i = 0; i < sub.original.size(); ++i) next_labels[i] = labels[sub.original[i]];
    cur = std::move(sub.graph);
    labels = std::move(next_labels);
    ++step;

    DeletionRecord rec;
    rec.step = step;
    rec.removed = removed;
    rec.walk_length = len;
    const BigInt t_after = closed_walk_count(cur, len);
    rec.log_walks = big_log(t_before);
    const double l = static_cast<double>(len);
    if (t_after > 0) {
      // lambda1(next) >= (T'/(q-1))^{1/l} and lambda1(prev) <= T^{1/l}.
      rec.certified_factor =
          std::exp((big_log(t_after) - std::log(static_cast<double>(q - 1)) - rec.log_walks) / l);
      rec.removed_share = 1.0 - std::exp(big_log(t_after) - rec.log_walks);
    } else {
      rec.certified_factor = 0.0;
      rec.removed_share = 1.0;
    }
    const double qd = static_cast<double>(q);
    rec.nominal_factor = 1.0 - 3.0 * std::log(qd) / qd;
    measure(rec);
    out.records.push_back(rec);
    out.trace.steps.push_back(
        {step, "delete " + std::to_string(removed), rec.lambda1, girth(cur), cur.vertex_count()});
    history.push_back(cur);
    label_history.push_back(labels);
  }
  if (out.records.back().lambda1 <= target) {
    out.crossed_step = out.records.size() - 1;
    if (out.stop_reason != "target-crossed") out.stop_reason = "target-crossed";
  }

  std::size_t best = 0;
  if (out.crossed_step) {
    const std::size_t c = *out.crossed_step;
    best = c;
    if (c > 0) {
      if (std::abs(out.records[c - 1].lambda1 - target) < std::abs(out.records[c].lambda1 - target))
        best = c - 1;
      out.certified_gap = (1.0 - out.records[c].certified_factor) * out.records[c - 1].lambda1;
    }
  } else {
    for (std::size_t i = 1; i < out.records.size(); ++i)
      if (std::abs(out.records[i].lambda1 - target) < std::abs(out.records[best].lambda1 - target))
        best = i;
  }
  out.trace.target = target;
  out.trace.best_step = best;
  out.trace.achieved = out.records[best].lambda1;
  out.graph = history[best];
  out.original = label_history[best];
  return out;
}

}  // namespace sforge
