#include "spectralforge/walks.hpp"

#include <cmath>

#include "spectralforge/error.hpp"

namespace sforge {

namespace {

using u128 = unsigned __int128;

void check_len(std::size_t len) {
  if (len < 2 || len % 2 != 0) fail(Errc::invalid_argument, "walk length must be even and >= 2");
}

// diag(A^len)_v = |A^{len/2} e_v|^2, so half-length powers suffice.
template <typename Int>
std::vector<Int> diagonal_counts(const Graph& g, std::size_t len) {
  const std::size_t n = g.vertex_count();
  const std::size_t half = len / 2;
  std::vector<Int> out(n);
  std::vector<Int> x(n), y(n);
  std::vector<Vertex> support, next_support;
  std::vector<std::uint8_t> in_next(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    support.assign(1, s);
    x[s] = 1;
    for (std::size_t step = 0; step < half; ++step) {
      next_support.clear();
      for (Vertex u : support)
        for (Vertex w : g.neighbors(u))
          if (!in_next[w]) {
            in_next[w] = 1;
            y[w] = 0;
            next_support.push_back(w);
          }
      for (Vertex u : support)
        for (Vertex w : g.neighbors(u)) y[w] += x[u];
      for (Vertex u : support) x[u] = 0;
      for (Vertex w : next_support) {
        x[w] = y[w];
        in_next[w] = 0;
      }
      support.swap(next_support);
    }
    Int acc = 0;
    for (Vertex u : support) {
      acc += x[u] * x[u];
      x[u] = 0;
    }
    out[s] = acc;
  }
  return out;
}

bool fits_u128(const Graph& g, std::size_t len) {
  // Each diagonal entry is at most Delta^len; the sum over vertices must fit.
  const double bits = std::log2(static_cast<double>(std::max<std::size_t>(g.max_degree(), 1))) *
                          static_cast<double>(len) +
                      std::log2(static_cast<double>(std::max<std::size_t>(g.vertex_count(), 1))) + 1;
  return bits < 126.0;
}

BigInt to_big(u128 x) {
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
  return (hi << 64) + lo;
}

}  // namespace

std::vector<BigInt> per_vertex_walk_counts(const Graph& g, std::size_t len) {
  check_len(len);
  std::vector<BigInt> out;
  out.reserve(g.vertex_count());
  if (fits_u128(g, len)) {
    for (u128 c : diagonal_counts<u128>(g, len)) out.push_back(to_big(c));
  } else {
    out = diagonal_counts<BigInt>(g, len);
  }
  return out;
}

BigInt closed_walk_count(const Graph& g, std::size_t len) {
  BigInt total = 0;
  for (const BigInt& c : per_vertex_walk_counts(g, len)) total += c;
  return total;
}

double big_log(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double big_root(const BigInt& x, std::size_t k) {
  if (x <= 0) return 0.0;
  return std::exp(big_log(x) / static_cast<double>(k));
}

}  // namespace sforge
