#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sforge {

enum class Errc {
  invalid_argument,
  parity,
  retries_exhausted,
  edges_not_disjoint,
  replacement_edge_exists,
  missing_edge,
  odd_vertex_count,
  out_of_range,
  degree_exceeds,
  non_convergence,
  zero_vector,
  empty_set,
  infeasible,
  leaf_count_mismatch,
  no_low_degree_vertex,
  no_eligible_swap,
  search_exhausted,
  parse,
  duplicate_edge,
  io,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sforge
