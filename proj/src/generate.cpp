#include "spectralforge/generate.hpp"

#include <algorithm>

#include "spectralforge/error.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/structure.hpp"

namespace sforge {

namespace {

class Builder {
 public:
  Builder(std::size_t n, std::size_t reach) : adj_(n), mark_(n, 0), reach_(reach) {}

  bool adjacent(Vertex a, Vertex b) const {
    return std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end();
  }
  void connect(Vertex a, Vertex b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    edges_.push_back(Edge::make(a, b));
  }

  // Marks every vertex within distance reach-1 of u; a partner outside this
  // ball closes no cycle shorter than reach+1.
  void mark_ball(Vertex u) {
    ++stamp_;
    ball_.assign(1, u);
    mark_[u] = stamp_;
    const std::size_t depth = reach_ == 0 ? 1 : reach_ - 1;
    std::size_t begin = 0;
    for (std::size_t level = 0; level < depth; ++level) {
      const std::size_t end = ball_.size();
      for (std::size_t i = begin; i < end; ++i)
        for (Vertex w : adj_[ball_[i]])
          if (mark_[w] != stamp_) {
            mark_[w] = stamp_;
            ball_.push_back(w);
          }
      begin = end;
      if (begin == ball_.size()) break;
    }
  }
  bool blocked(Vertex w) const { return mark_[w] == stamp_; }

  std::vector<Edge>& edges() { return edges_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> mark_;
  std::vector<Vertex> ball_;
  std::uint64_t stamp_ = 0;
  std::size_t reach_;
  std::vector<Edge> edges_;
};

// One pairing attempt. `left` and `right` are stub pools; for the plain model
// both refer to the same pool.
std::optional<Graph> pair_once(std::size_t n, std::vector<Vertex> left, std::vector<Vertex>* right,
                               std::size_t reach, Rng& rng) {
  Builder b(n, reach);
  const bool split = right != nullptr;
  std::vector<Vertex>& pool_a = left;
  std::vector<Vertex>& pool_b = split ? *right : left;
  auto take = [&](std::vector<Vertex>& pool, std::size_t i) {
    const Vertex v = pool[i];
    pool[i] = pool.back();
    pool.pop_back();
    return v;
  };
  while (!pool_a.empty()) {
    const Vertex u = take(pool_a, static_cast<std::size_t>(rng.below(pool_a.size())));
    if (pool_b.empty()) return std::nullopt;
    b.mark_ball(u);
    auto ok = [&](Vertex w) { return !b.blocked(w) && !b.adjacent(u, w); };
    std::optional<std::size_t> pick;
    for (int probe = 0; probe < 64 && !pick; ++probe) {
      const auto i = static_cast<std::size_t>(rng.below(pool_b.size()));
      if (ok(pool_b[i])) pick = i;
    }
    if (!pick) {
      std::vector<std::size_t> eligible;
      for (std::size_t i = 0; i < pool_b.size(); ++i)
        if (ok(pool_b[i])) eligible.push_back(i);
      if (eligible.empty()) return std::nullopt;
      pick = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
    }
    b.connect(u, take(pool_b, *pick));
  }
  return Graph::from_edges(n, b.edges());
}

bool passes(const Graph& g, const GenerationPolicy& p) {
  if (p.min_girth) {
    const Length gi = girth(g);
    if (gi != kInfinite && gi < *p.min_girth) return false;
  }
  if (p.require_connected && !is_connected(g)) return false;
  if (p.lambda2_ceiling || p.lambda_min_floor) {
    const std::size_t kt = p.lambda2_ceiling ? 2 : 0;
    const std::size_t kb = p.lambda_min_floor ? 1 : 0;
    const Spectrum s = spectrum(g, kt, kb, p.solver, false);
    if (p.lambda2_ceiling && s.eigenvalues[1] > *p.lambda2_ceiling) return false;
    if (p.lambda_min_floor && s.eigenvalues.back() < *p.lambda_min_floor) return false;
  }
  return true;
}

void check_policy(const GenerationPolicy& p) {
  if (p.max_retries < 1) fail(Errc::invalid_argument, "max_retries must be at least 1");
}

std::size_t reach_of(const GenerationPolicy& p) {
  // New edge u-w closes cycles of length dist(u,w)+1.
  return p.min_girth && *p.min_girth > 3 ? *p.min_girth - 1 : 1;
}

std::string exhausted_message(const char* what, std::size_t tries) {
  return std::string(what) + ": policy not met after " + std::to_string(tries) + " attempts";
}

}  // namespace

Generated generate_regular(std::size_t n, std::size_t d, const GenerationPolicy& policy) {
  check_policy(policy);
  if (d < 2) fail(Errc::invalid_argument, "random_regular: d must be at least 2");
  if ((n * d) % 2 != 0) fail(Errc::parity, "random_regular: n*d must be even");
  if (d >= n) fail(Errc::invalid_argument, "random_regular: d must be below n");
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
  for (std::size_t attempt = 0; attempt < policy.max_retries; ++attempt) {
    Rng rng(derive_seed(policy.seed, attempt));
    auto g = pair_once(n, stubs, nullptr, reach_of(policy), rng);
    if (g && passes(*g, policy)) return {std::move(*g), attempt + 1};
  }
  fail(Errc::retries_exhausted, exhausted_message("random_regular", policy.max_retries));
}

Graph random_regular(std::size_t n, std::size_t d, const GenerationPolicy& policy) {
  return generate_regular(n, d, policy).graph;
}

Generated generate_bipartite_regular(std::size_t n, std::size_t d, const GenerationPolicy& policy) {
  check_policy(policy);
  if (n % 2 != 0) fail(Errc::odd_vertex_count, "bipartite generator needs even n");
  if (d < 1 || d > n / 2) fail(Errc::invalid_argument, "bipartite generator: bad degree");
  const std::size_t half = n / 2;
  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < half; ++v)
    for (std::size_t k = 0; k < d; ++k) {
      left.push_back(v);
      right.push_back(static_cast<Vertex>(v + half));
    }
  for (std::size_t attempt = 0; attempt < policy.max_retries; ++attempt) {
    Rng rng(derive_seed(policy.seed, attempt));
    std::vector<Vertex> r = right;
    auto g = pair_once(n, left, &r, reach_of(policy), rng);
    if (g && passes(*g, policy)) return {std::move(*g), attempt + 1};
  }
  fail(Errc::retries_exhausted, exhausted_message("random_bipartite_regular", policy.max_retries));
}

Graph random_lift(const Graph& base, std::size_t N, std::uint64_t seed) {
  if (N < 1) fail(Errc::invalid_argument, "random_lift: N must be at least 1");
  if (auto bad = validate(base)) fail(Errc::invalid_argument, "random_lift: invalid base: " + *bad);
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<Vertex> perm(N);
  for (Edge e : base.edges()) {
    for (Vertex k = 0; k < N; ++k) perm[k] = k;
    rng.shuffle(std::span<Vertex>(perm));
    for (Vertex k = 0; k < N; ++k)
      edges.push_back(Edge::make(static_cast<Vertex>(e.u * N + k), static_cast<Vertex>(e.v * N + perm[k])));
  }
  return Graph::from_edges(base.vertex_count() * N, edges);
}

Generated generate_lift(const Graph& base, std::size_t N, const GenerationPolicy& policy) {
  check_policy(policy);
  for (std::size_t attempt = 0; attempt < policy.max_retries; ++attempt) {
    Graph g = random_lift(base, N, derive_seed(policy.seed, attempt));
    if (passes(g, policy)) return {std::move(g), attempt + 1};
  }
  fail(Errc::retries_exhausted, exhausted_message("random_lift", policy.max_retries));
}

Graph project_lift(const Graph& lift, std::size_t N) {
  if (N == 0 || lift.vertex_count() % N != 0) fail(Errc::invalid_argument, "project_lift: bad fold");
  std::vector<Edge> edges;
  for (Edge e : lift.edges()) {
    const auto a = static_cast<Vertex>(e.u / N), b = static_cast<Vertex>(e.v / N);
    if (a != b) edges.push_back(Edge::make(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(lift.vertex_count() / N, edges);
}

}  // namespace sforge
