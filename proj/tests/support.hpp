#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spectralforge/error.hpp"
#include "spectralforge/graph.hpp"

namespace testing {

// Code of the sforge::Error thrown by f, or nullopt when nothing is thrown.
inline std::optional<sforge::Errc> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const sforge::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Shortest cycle by exhaustive DFS over simple paths; small graphs only.
inline std::size_t brute_girth(const sforge::Graph& g, bool odd_only = false) {
  using sforge::Vertex;
  const std::size_t n = g.vertex_count();
  std::size_t best = sforge::kInfinite;
  std::vector<char> on(n, 0);
  std::function<void(Vertex, Vertex, std::size_t)> walk = [&](Vertex start, Vertex v,
                                                              std::size_t len) {
    if (len + 1 >= best) return;
    for (Vertex w : g.neighbors(v)) {
      if (w == start && len >= 2) {
        if (!odd_only || (len + 1) % 2 == 1) best = std::min(best, len + 1);
      } else if (w > start && !on[w]) {
        on[w] = 1;
        walk(start, w, len + 1);
        on[w] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    on[s] = 1;
    walk(s, s, 0);
    on[s] = 0;
  }
  return best;
}

// trace(A^len) with 64-bit integer matrix products.
inline std::uint64_t brute_trace_power(const sforge::Graph& g, std::size_t len) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> a(n * n, 0), p(n * n, 0), t(n * n);
  for (sforge::Vertex u = 0; u < n; ++u) {
    p[u * n + u] = 1;
    for (auto v : g.neighbors(u)) a[u * n + v] = 1;
  }
  for (std::size_t k = 0; k < len; ++k) {
    std::fill(t.begin(), t.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        if (p[i * n + m])
          for (std::size_t j = 0; j < n; ++j) t[i * n + j] += p[i * n + m] * a[m * n + j];
    p.swap(t);
  }
  std::uint64_t tr = 0;
  for (std::size_t i = 0; i < n; ++i) tr += p[i * n + i];
  return tr;
}

}  // namespace testing
