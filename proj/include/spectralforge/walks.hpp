#pragma once

#include <gmpxx.h>

#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

using BigInt = mpz_class;

// trace(A^len), exact.
BigInt closed_walk_count(const Graph& g, std::size_t len);

// diag(A^len), exact; entry v counts closed walks starting at v.
std::vector<BigInt> per_vertex_walk_counts(const Graph& g, std::size_t len);

// x^(1/k) for a big integer, in double precision.
double big_root(const BigInt& x, std::size_t k);
double big_log(const BigInt& x);

}  // namespace sforge
