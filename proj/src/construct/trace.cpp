#include "spectralforge/construct/trace.hpp"

#include <algorithm>
#include <cmath>

#include "spectralforge/io.hpp"

namespace sforge {

std::string format_length(Length x) { return x == kInfinite ? "inf" : std::to_string(x); }

std::string trace_csv(const InterpolationTrace& trace) {
  std::string out = "step,surgery,eigenvalue,girth,counter\n";
  for (const TraceStep& s : trace.steps) {
    out += std::to_string(s.step);
    out += ',';
    out += s.surgery;
    out += ',';
    out += format_double(s.eigenvalue);
    out += ',';
    out += format_length(s.girth);
    out += ',';
    out += std::to_string(s.counter);
    out += '\n';
  }
  return out;
}

double max_step_drift(const InterpolationTrace& trace) {
  double best = 0.0;
  for (std::size_t i = 1; i < trace.steps.size(); ++i)
    best = std::max(best, std::abs(trace.steps[i].eigenvalue - trace.steps[i - 1].eigenvalue));
  return best;
}

}  // namespace sforge
