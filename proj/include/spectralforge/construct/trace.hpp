#pragma once

#include <string>
#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

struct TraceStep {
  std::size_t step = 0;
  std::string surgery;
  double eigenvalue = 0.0;
  Length girth = kInfinite;
  std::size_t counter = 0;  // crossing edges, or vertex count
};

struct InterpolationTrace {
  std::vector<TraceStep> steps;
  double target = 0.0;
  double achieved = 0.0;
  std::size_t best_step = 0;
};

std::string format_length(Length x);

// Header step,surgery,eigenvalue,girth,counter; one row per step.
std::string trace_csv(const InterpolationTrace& trace);

// Largest |eigenvalue difference| between consecutive steps.
double max_step_drift(const InterpolationTrace& trace);

}  // namespace sforge
