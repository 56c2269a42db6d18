#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectralforge/graph.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct Certificate {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t seeds = 10;
  std::size_t jobs = 1;
  std::size_t swap_n = 200;    // swap-drift, linf
  std::size_t host_n = 1000;   // patch-pinning
  SolverConfig solver;
};

// swap-drift, linf, walk-count, layers, join-drift, secular-transfer,
// patch-pinning, saturation, lambda2-ceiling.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// One certificate per seed index, in index order whatever the job count.
// Instance i uses derive_seed(seed, i).
std::vector<Certificate> run_suite(const std::string& name, const SuiteOptions& opt);
Certificate run_instance(const std::string& name, std::uint64_t seed, const SuiteOptions& opt);

// Small augmentation instance shared by secular-transfer and layers: a
// connected core on 2..10 vertices, built with the degree cap lifted.
struct AugmentInstance {
  Graph core;
  std::size_t d = 3;
  std::size_t s = 1;
  std::size_t levels = 2;
};
AugmentInstance augment_instance(std::uint64_t seed);

// Connected graph on n vertices with max degree <= cap, as dense as the
// draws allow.
Graph random_capped_graph(std::size_t n, std::size_t cap, std::uint64_t seed);

}  // namespace sforge
